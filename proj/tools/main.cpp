#include <iostream>

#include "cbdp/cli.hpp"

int main(int argc, char** argv) { return cbdp::run_cli(argc, argv, std::cout, std::cerr); }
