#include <iostream>
#include <string>
#include <vector>

#include "condtree/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return condtree::run(args, std::cout, std::cerr);
}
