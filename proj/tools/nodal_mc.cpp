#include <iostream>

#include "nodalmc/cli.hpp"

int main(int argc, char** argv) { return nodalmc::cli::run(argc, argv, std::cout, std::cerr); }
