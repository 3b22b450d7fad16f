#include <iostream>
#include <vector>

#include "declat/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return declat::run(args, std::cout).exit_code;
}
