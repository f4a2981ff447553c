#include <iostream>

#include "markov_cycles/cli.hpp"

int main(int argc, char** argv) { return markov_cycles::cli::run(argc, argv, std::cout, std::cerr); }
