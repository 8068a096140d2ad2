#include <iostream>
#include <string>
#include <vector>

#include "pkflat/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return pkflat::dispatch(args, std::cout, std::cerr);
}
