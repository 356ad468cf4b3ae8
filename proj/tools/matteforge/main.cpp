#include <iostream>

#include "matteforge/commands.hpp"

int main(int argc, char** argv) {
  return matteforge::cli::run(argc, argv, std::cout, std::cerr);
}
