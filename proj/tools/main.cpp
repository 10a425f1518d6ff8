#include <iostream>

#include "jlip/cli.hpp"

int main(int argc, char** argv) {
  return jlip::cli::run(argc, argv, std::cout, std::cerr);
}
