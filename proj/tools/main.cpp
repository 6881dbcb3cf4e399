#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) { return cyclelsi::cli::run(argc, argv, std::cout, std::cerr); }
