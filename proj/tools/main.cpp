#include <iostream>
#include <string>
#include <vector>

#include "dicubical/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return dicubical::run_cli(args, std::cout, std::cerr);
}
