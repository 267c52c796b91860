#include <iostream>

#include "saga/cli.hpp"

int main(int argc, char** argv) { return saga::cli::run(argc, argv, std::cin, std::cout, std::cerr); }
