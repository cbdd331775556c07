#include <iostream>

#include "boxcox/cli.hpp"

int main(int argc, char** argv) { return boxcox::cli::run(argc, argv, std::cout, std::cerr); }
