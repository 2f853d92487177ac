#include <iostream>

#include "sfi_cli/run.hpp"

int main(int argc, char** argv) { return sfi::cli::main_entry(argc, argv, std::cout, std::cerr); }
