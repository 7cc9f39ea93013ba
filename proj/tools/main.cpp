#include "zenoqed/commands.hpp"

#include <iostream>

int main(int argc, char** argv) {
  return zenoqed::cli_main(argc, argv, std::cout, std::cerr);
}
