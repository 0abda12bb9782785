#include <iostream>

#include "msmb/cli.hpp"

int main(int argc, char** argv) {
  return msmb::run_cli(argc, argv, std::cout, std::cerr);
}
