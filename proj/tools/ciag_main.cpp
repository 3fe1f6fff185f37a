#include <iostream>
#include <string>
#include <vector>

#include "ciag/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return ciag::run_cli(args, std::cout, std::cerr);
}
