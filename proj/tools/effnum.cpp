#include <iostream>
#include <string>
#include <vector>

#include "effnum/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return effnum::cli::run(args, std::cout, std::cerr);
}
