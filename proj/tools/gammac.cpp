#include <iostream>

#include "gammac/cli.hpp"

int main(int argc, char** argv) {
  return gammac::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
