#include <iostream>

#include "ahp/cli.hpp"

int main(int argc, char** argv) { return ahp::run_cli(argc, argv, std::cout, std::cerr); }
