#include <iostream>
#include <string>
#include <vector>

#include "qvortex_cli/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv, argv + argc);
  return qvortex::cli::run(args, std::cout, std::cerr);
}
