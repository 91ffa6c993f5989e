#include <iostream>

#include "gkw/cli.hpp"

int main(int argc, char** argv) { return gkw::run_cli(argc, argv, std::cout, std::cerr); }
