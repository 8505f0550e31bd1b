#include <iostream>
#include <string>
#include <vector>

#include "cyclemetrics/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return cyclemetrics::run_cli(args, std::cout, std::cerr);
}
