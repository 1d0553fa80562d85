#include <iostream>
#include <string>
#include <vector>

#include "mub6/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return mub6::run_cli(args, std::cout, std::cerr);
}
