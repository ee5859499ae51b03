#include <iostream>

#include "harmonic/cli.hpp"

int main(int argc, char** argv) { return harmonic::run_cli(argc, argv, std::cout, std::cerr); }
