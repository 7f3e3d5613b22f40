#include <iostream>

#include "numberless_cli/cli.hpp"

int main(int argc, char** argv) {
  return numberless::cli::run_cli({argv + 1, argv + argc}, std::cout, std::cerr);
}
