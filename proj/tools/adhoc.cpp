#include <iostream>

#include "adhoc/cli.hpp"

int main(int argc, char** argv) { return adhoc::cli::run(argc, argv, std::cin, std::cout, std::cerr); }
