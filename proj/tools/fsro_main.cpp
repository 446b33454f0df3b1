#include <iostream>

#include "fsro/cli.hpp"

int main(int argc, char** argv) { return fsro::cli::main(argc, argv, std::cout, std::cerr); }
