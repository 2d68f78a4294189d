#include <iostream>

#include "giantqed/cli.hpp"

int main(int argc, char** argv) { return giantqed::cli::run(argc, argv, std::cout, std::cerr); }
