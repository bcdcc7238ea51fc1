#include <iostream>

#include "alignlab/cli.hpp"

int main(int argc, char** argv) { return alignlab::run_cli(argc, argv, std::cout, std::cerr); }
