#include <iostream>
#include <string>
#include <vector>

#include "cutenc/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return cutenc::cli::run(std::move(args), std::cout, std::cerr);
}
