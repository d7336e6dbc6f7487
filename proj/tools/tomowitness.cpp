#include <iostream>

#include "tomowitness/cli/app.hpp"

int main(int argc, char** argv) { return tomowitness::cli::run(argc, argv, std::cout, std::cerr); }
