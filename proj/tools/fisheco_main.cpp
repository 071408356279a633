#include <iostream>
#include <string>
#include <vector>

#include "fisheco/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return fisheco::run_cli(args, std::cout, std::cerr);
}
