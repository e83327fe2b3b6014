#include <iostream>

#include "dcflex/report/cli.hpp"

int main(int argc, char** argv) { return dcflex::report::run_cli(argc, argv, std::cout, std::cerr); }
