// SPDX-License-Identifier: MIT
#include <iostream>

#include "gclt/cli.hpp"

int main(int argc, char** argv) { return gclt::cli_main(argc, argv, std::cout, std::cerr); }
