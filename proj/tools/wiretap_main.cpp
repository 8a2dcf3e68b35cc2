#include <iostream>

#include "wiretap/cli.hpp"

int main(int argc, char** argv) { return wiretap::cli_main(argc, argv, std::cout, std::cerr); }
