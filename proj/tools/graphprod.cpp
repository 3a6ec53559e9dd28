#include <iostream>
#include <string>
#include <vector>

#include "graphprod/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return graphprod::run(args, std::cout, std::cerr);
}
