#include <iostream>

#include "gmaos/cli.hpp"

int main(int argc, char** argv) {
  return gmaos::run_cli(argc, argv, std::cout, std::cerr);
}
