#include <iostream>
#include <string>
#include <vector>

#include "emgraph/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return emgraph::run(args, std::cout, std::cerr);
}
