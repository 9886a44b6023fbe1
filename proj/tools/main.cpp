#include <iostream>
#include <string>
#include <vector>

#include "affschur/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return affschur::cmd_dispatch(args, std::cout, std::cerr);
}
