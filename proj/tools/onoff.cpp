#include <iostream>

#include "onoff/cli/app.hpp"

int main(int argc, char** argv) {
  return onoff::cli::main_entry(argc, argv, std::cout, std::cerr);
}
