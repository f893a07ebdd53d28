#include <iostream>

#include "qobs/cli.hpp"

int main(int argc, char** argv) {
  return qobs::cli::run(argc, argv, std::cout, std::cerr);
}
