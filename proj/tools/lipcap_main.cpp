#include <iostream>
#include <string>
#include <vector>

#include "lipcap/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return lipcap::run_cli(args, std::cout, std::cerr);
}
