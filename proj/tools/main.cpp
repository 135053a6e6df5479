#include <iostream>

#include "survcor/cli.hpp"

int main(int argc, char** argv) {
  return survcor::run_cli(argc, argv, std::cout, std::cerr);
}
