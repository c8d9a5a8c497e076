#include <iostream>

#include "kerrdirac/cli.hpp"

int main(int argc, char** argv) { return kerrdirac::cli::run_cli(argc, argv, std::cout, std::cerr); }
