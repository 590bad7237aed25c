#include <iostream>

#include "posreal/cli.hpp"

int main(int argc, char** argv) {
    return posreal::cli::run(argc, argv, std::cout, std::cerr);
}
