#include <iostream>

#include "pendular_cli/commands.hpp"

int main(int argc, char** argv) {
  return pendular::cli::run(argc, argv, std::cout, std::cerr);
}
