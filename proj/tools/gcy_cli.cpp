#include <iostream>

#include "gcy/cli.hpp"

int main(int argc, char** argv) { return gcy::cli::run(argc, argv, std::cin, std::cout, std::cerr); }
