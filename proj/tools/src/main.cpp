#include <iostream>

#include "aoi/cli/run.hpp"

int main(int argc, char** argv) { return aoi::cli::cli_main(argc, argv, std::cout, std::cerr); }
