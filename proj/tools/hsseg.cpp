#include <iostream>
#include <string>
#include <vector>

#include "hsseg/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return hsseg::cli::run(args, std::cout, std::cerr);
}
