#include <iostream>

#include "btg/cli.hpp"

int main(int argc, char** argv) { return btg::run_cli(argc, argv, std::cout, std::cerr); }
