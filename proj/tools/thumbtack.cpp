#include <iostream>

#include "thumbtack/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return thumbtack::run(args, std::cout, std::cerr);
}
