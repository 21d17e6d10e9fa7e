#include <iostream>

#include "perfsurf/cli.hpp"

int main(int argc, char** argv) { return perfsurf::cli::run(argc, argv, std::cout, std::cerr); }
