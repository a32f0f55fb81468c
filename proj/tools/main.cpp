#include <iostream>

#include "sdq/cli.hpp"

int main(int argc, char** argv) {
  return sdq::run_cli(argc, argv, std::cout, std::cerr);
}
