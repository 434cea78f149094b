#include <iostream>

#include "rxtx/commands.hpp"

int main(int argc, char** argv) { return rxtx::cli::run(argc, argv, std::cout, std::cerr); }
