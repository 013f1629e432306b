#include <iostream>

#include "cli.h"

int main(int argc, char** argv) { return sensfeat::cli::run(argc, argv, std::cout, std::cerr); }
