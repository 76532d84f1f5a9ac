#include <iostream>

#include "tweetpol/cli.hpp"

int main(int argc, char** argv) {
  return tweetpol::cli::run_cli(argc, argv, std::cout, std::cerr);
}
