#include <iostream>

#include "rrtcut/cli.hpp"

int main(int argc, char** argv) {
  return rrtcut::cli::run(argc, argv, std::cout, std::cerr);
}
