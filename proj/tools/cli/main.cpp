#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) { return dis::cli::run_main(argc, argv, std::cout, std::cerr); }
