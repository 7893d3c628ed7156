#include <iostream>

#include "cli.h"

int main(int argc, char** argv) {
  return uavsim::cli::RunCli(argc, argv, std::cout, std::cerr);
}
