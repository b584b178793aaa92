#include <iostream>
#include <string>
#include <vector>

#include "reeb/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return reeb::run_cli(args, std::cout, std::cerr);
}
