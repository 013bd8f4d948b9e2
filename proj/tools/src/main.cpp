#include <iostream>

#include "bdspectra/cli.hpp"

int main(int argc, char** argv) { return bdspectra::cli::run(argc, argv, std::cout, std::cerr); }
