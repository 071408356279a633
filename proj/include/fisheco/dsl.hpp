#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "fisheco/error.hpp"
#include "fisheco/graph.hpp"

namespace fisheco {

// Fault location inside a .fis document. line/column are 1-based.
class ParseError : public Error {
 public:
  ParseError(int line, int column, std::string message, std::string snippet);

  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& snippet() const { return snippet_; }
  // Message without the "line:col:" prefix carried by what().
  const std::string& detail() const { return detail_; }

 private:
  int line_;
  int column_;
  std::string snippet_;
  std::string detail_;
};

// Parses scenario text (line-oriented, '#' comments) into a graph by
// replaying statements through the ScenarioGraph mutators. The first fault
// aborts with a ParseError pointing at the offending line.
ScenarioGraph parse(std::string_view text);

// Canonical form: header, entities sorted by (type_code, id), relations in
// insertion order, attributes sorted by name, LF line endings.
// parse(serialize(g)) == g and serialize is idempotent.
std::string serialize(const ScenarioGraph& g);

// Shipped scenario fixtures.
std::vector<std::string> fixture_names();
const std::string& fixture_text(std::string_view name);  // Errc::unknown_fixture
ScenarioGraph load_fixture(std::string_view name);

}  // namespace fisheco
