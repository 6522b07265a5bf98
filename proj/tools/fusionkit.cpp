#include "fusionkit/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return fk::cli::run(argc, argv, std::cout, std::cerr); }
