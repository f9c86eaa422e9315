#include <iostream>

#include "elevenfloer/cli.hpp"

int main(int argc, char** argv) { return elevenfloer::cli::run(argc, argv, std::cout, std::cerr); }
