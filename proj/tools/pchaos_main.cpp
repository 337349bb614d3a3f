// Apache License, Version 2.0, refer to LICENSE.txt
#include <iostream>

#include "pchaos/cli.hpp"

int main(int argc, char** argv) { return pchaos::run_cli(argc, argv, std::cout, std::cerr); }
