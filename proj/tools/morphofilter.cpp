#include <iostream>

#include "morphofilter/cli.hpp"

int main(int argc, char** argv) { return morpho::cli::run_cli(argc, argv, std::cout, std::cerr); }
