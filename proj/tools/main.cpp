#include <iostream>

#include "gquant/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return gquant::cli::run(args, std::cout, std::cerr);
}
