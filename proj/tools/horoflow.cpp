#include <iostream>

#include "horoflow/cli.hpp"

int main(int argc, char** argv) { return horoflow::cli_main(argc, argv, std::cout, std::cerr); }
