#include <iostream>
#include <string>
#include <vector>

#include "factorx/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return factorx::run(args, std::cout, std::cerr);
}
