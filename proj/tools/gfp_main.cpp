#include <iostream>

#include "gfp/runner/cli.hpp"

int main(int argc, char** argv) { return gfp::runner::cli_main(argc, argv, std::cout, std::cerr); }
