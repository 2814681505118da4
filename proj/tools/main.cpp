#include <iostream>

#include "extremal/cli.hpp"

int main(int argc, char** argv) { return extremal::run_cli(argc, argv, std::cout, std::cerr); }
