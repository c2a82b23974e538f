#include <iostream>

#include "kentropy/cli.hpp"

int main(int argc, char** argv) { return kentropy::cli::run(argc, argv, std::cout, std::cerr); }
