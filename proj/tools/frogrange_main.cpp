#include <iostream>
#include <string>
#include <vector>

#include "frogrange/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return frogrange::run_cli(args, std::cout, std::cerr);
}
