#include <iostream>
#include <string>
#include <vector>

#include "expkern/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return expkern::cli::run(args, std::cin, std::cout, std::cerr);
}
