#include <iostream>
#include <string>
#include <vector>

#include "latinfo/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return latinfo::cli::run(args, std::cout, std::cerr);
}
