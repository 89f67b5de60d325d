#include <iostream>

#include "eser/cli.hpp"

int main(int argc, char** argv) {
  return eser::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
