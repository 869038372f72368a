#include <iostream>
#include <string>
#include <vector>

#include "dba/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return dba::cli::run(args, std::cout, std::cerr);
}
