#include <iostream>

#include "qap/cli.hpp"

int main(int argc, char** argv) { return qap::run_cli(argc, argv, std::cout, std::cerr); }
