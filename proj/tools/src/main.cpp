#include <iostream>

#include "hlp_cli/app.hpp"

int main(int argc, char** argv) { return hlp::cli::main(argc, argv, std::cout, std::cerr); }
