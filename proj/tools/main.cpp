#include <iostream>
#include <string>
#include <vector>

#include "lbs_cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return lbs::cli::run(args, std::cout, std::cerr);
}
