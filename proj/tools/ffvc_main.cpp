#include <iostream>

#include "ffvc/cli.hpp"

int main(int argc, char** argv) { return ffvc::cli::run(argc, argv, std::cout, std::cerr); }
