#include <iostream>

#include "indyn/cli.hpp"

int main(int argc, char** argv) {
  return indyn::io::run_cli(argc, argv, std::cout, std::cerr);
}
