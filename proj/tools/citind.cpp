#include <iostream>
#include <string>
#include <vector>

#include "citind/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return citind::run_cli(args, std::cout, std::cerr);
}
