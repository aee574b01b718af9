#include <iostream>

#include "cohdist/cli.hpp"

int main(int argc, char** argv) { return cohdist::cli::run(argc, argv, std::cout, std::cerr); }
