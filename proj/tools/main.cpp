#include <iostream>

#include "rmtev/cli/app.hpp"

int main(int argc, char** argv) { return rmtev::cli::run(argc, argv, std::cout, std::cerr); }
