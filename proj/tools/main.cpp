#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) { return euler2c::cli::run(argc, argv, std::cout, std::cerr); }
