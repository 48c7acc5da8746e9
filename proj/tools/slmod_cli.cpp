#include <iostream>
#include <string>
#include <vector>

#include "slmod/cli_report.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return slmod::cli_main(args, std::cout, std::cerr);
}
