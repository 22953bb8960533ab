#include <iostream>

#include "pseudoreg/cli.hpp"

int main(int argc, char** argv) { return pseudoreg::run_cli(argc, argv, std::cout, std::cerr); }
