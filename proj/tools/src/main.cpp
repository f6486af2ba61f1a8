#include <iostream>
#include <string>
#include <vector>

#include "trimedge_cli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return trimedge::cli::run(args, std::cout, std::cerr);
}
