#include <iostream>

#include "malle/cli.hpp"

int main(int argc, char** argv) { return malle::run_cli(argc, argv, std::cout, std::cerr); }
