#include <iostream>
#include <string>
#include <vector>

#include "proofblocks/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return proofblocks::cli::run(args, std::cout, std::cerr);
}
