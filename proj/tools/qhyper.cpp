#include <iostream>

#include "qhyper/cli.hpp"

int main(int argc, char** argv) { return qhyper::cli::main_entry(argc, argv, std::cout, std::cerr); }
