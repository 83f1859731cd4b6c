#include "epct/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return epct::run_cli(argc, argv, std::cout, std::cerr); }
