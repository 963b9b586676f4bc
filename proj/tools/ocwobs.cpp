#include <iostream>
#include <string>
#include <vector>

#include "ocwobs/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return ocw::cli::run(args, std::cout, std::cerr);
}
