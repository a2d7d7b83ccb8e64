#include <iostream>

#include "sqrtmod/cli.hpp"

int main(int argc, char** argv) {
    return sqrtmod::cli::run(argc, argv, std::cout, std::cerr);
}
