#include <iostream>

#include "scs/cli.hpp"

int main(int argc, char** argv) {
  return scs::cli::run(argc, argv, std::cout, std::cerr);
}
