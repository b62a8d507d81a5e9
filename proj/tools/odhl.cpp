#include <iostream>

#include "odhl/cli.hpp"

int main(int argc, char** argv) { return odhl::run_cli(argc, argv, std::cout, std::cerr); }
