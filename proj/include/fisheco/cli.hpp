#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fisheco {

// Exit codes: 0 success, 1 validation errors found, 2 usage/parse error,
// 3 I/O error. Results go to out, diagnostics to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace fisheco
