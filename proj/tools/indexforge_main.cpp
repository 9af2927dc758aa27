#include <iostream>
#include <string>
#include <vector>

#include "indexforge/cli.hpp"

int main(int argc, char** argv)
{
  std::vector<std::string> args(argv + 1, argv + argc);
  return indexforge::run_cli(args, std::cout, std::cerr);
}
