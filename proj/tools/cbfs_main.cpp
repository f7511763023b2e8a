#include <iostream>
#include <string>
#include <vector>

#include "cbfs/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return cbfs::run_cli(args, std::cin, std::cout, std::cerr);
}
