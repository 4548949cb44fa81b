#include <iostream>

#include "biofact/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return biofact::run_cli(args, std::cout, std::cerr);
}
