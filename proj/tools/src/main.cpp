#include <iostream>

#include "cmdp/cli.hpp"

int main(int argc, char** argv) { return cmdp::run_cli(argc, argv, std::cout, std::cerr); }
