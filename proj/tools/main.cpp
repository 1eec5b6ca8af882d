#include <iostream>
#include <string>
#include <vector>

#include "circsym/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return circsym::run_cli(args, std::cout, std::cerr);
}
