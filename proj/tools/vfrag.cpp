#include <iostream>

#include "vfrag/cli.hpp"

int main(int argc, char** argv) { return vfrag::cli::run(argc, argv, std::cout, std::cerr); }
