#include <iostream>

#include "xxz/app/cli.hpp"

int main(int argc, char** argv) { return xxz::app::run_cli(argc, argv, std::cout, std::cerr); }
