#include <iostream>

#include "cqes/cli.hpp"

int main(int argc, char** argv) { return cqes::run_cli(argc, argv, std::cout, std::cerr); }
