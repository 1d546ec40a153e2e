#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) { return su2phase::cli::run(argc, argv, std::cout, std::cerr); }
