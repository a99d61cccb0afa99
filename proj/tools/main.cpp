#include <iostream>

#include "ilab/cli.hpp"

int main(int argc, char** argv) { return ilab::main_entry(argc, argv, std::cout, std::cerr); }
