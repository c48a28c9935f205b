#include <iostream>

#include "wigcoh/cli.hpp"

int main(int argc, char** argv) { return wigcoh::run_sweep_cli(argc, argv, std::cout, std::cerr); }
