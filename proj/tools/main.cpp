#include <iostream>

#include "bratu/cli.hpp"

int main(int argc, char** argv) { return bratu::cli::run(argc, argv, std::cout, std::cerr); }
