#include <iostream>
#include <string>
#include <vector>

#include "frogcert/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return frogcert::cli::run(args, std::cout, std::cerr);
}
