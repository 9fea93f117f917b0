#include <iostream>

#include "coprime/cli.hpp"

int main(int argc, char** argv) {
    return coprime::cli::run(argc, argv, std::cout, std::cerr);
}
