#include "max2sat/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return max2sat::run_cli(argc, argv, std::cout, std::cerr); }
