#include <iostream>

#include "proofscope/cli.hpp"

int main(int argc, char** argv) { return proofscope::cli::run(argc, argv, std::cout, std::cerr); }
