#include <iostream>
#include <string>
#include <vector>

#include "fareycorr/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return fareycorr::cli::run(args, std::cout, std::cerr);
}
