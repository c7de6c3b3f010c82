#include <iostream>

#include "hawkes_queue/cli.hpp"

int main(int argc, char** argv) {
  return hawkes_queue::cli::run(argc, argv, std::cout, std::cerr);
}
