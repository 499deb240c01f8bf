#include <iostream>
#include <string>
#include <vector>

#include "padsol/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return padsol::cli::run(args, std::cout, std::cerr);
}
