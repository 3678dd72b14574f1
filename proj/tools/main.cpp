#include <iostream>
#include <string>
#include <vector>

#include "weilforge/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return weilforge::run_cli(args, std::cout, std::cerr);
}
