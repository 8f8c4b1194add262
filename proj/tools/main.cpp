#include <iostream>

#include "anharm/cli.hpp"

int main(int argc, char** argv) { return anharm::cli::run(argc, argv, std::cout, std::cerr); }
