#include "x0plane/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return x0plane::run_cli(argc, argv, std::cout, std::cerr); }
