#include <iostream>
#include <string>
#include <vector>

#include "treefree/cli_app.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return treefree::run_cli(args, std::cout, std::cerr);
}
