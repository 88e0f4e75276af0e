#include <iostream>

#include "phex/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return phex::cli::run(args, std::cout, std::cerr);
}
