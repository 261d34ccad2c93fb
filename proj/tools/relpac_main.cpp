#include <iostream>

#include "relpac/cli.hpp"

int main(int argc, char** argv) {
    return relpac::run_cli(argc, argv, std::cout, std::cerr);
}
