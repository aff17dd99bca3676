#include <iostream>

#include "skew/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return skew::run(args, std::cout, std::cerr);
}
