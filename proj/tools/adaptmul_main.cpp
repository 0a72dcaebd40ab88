#include <iostream>

#include "adaptmul/cli.hpp"

int main(int argc, char** argv) { return adaptmul::run_cli(argc, argv, std::cout, std::cerr); }
