#include <iostream>
#include <string>
#include <vector>

#include "minkmat/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return minkmat::run_cli(std::move(args), std::cout, std::cerr);
}
