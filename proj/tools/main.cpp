#include <iostream>

#include "pch/cli.hpp"

int main(int argc, char** argv) { return pch::cli::run(argc, argv, std::cout, std::cerr); }
