#include "spectrunc/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return spectrunc::cli::run(argc, argv, std::cout, std::cerr); }
