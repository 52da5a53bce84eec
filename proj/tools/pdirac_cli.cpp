#include <iostream>
#include <string>
#include <vector>

#include "pdirac/cli.hpp"

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return pdirac::run(args, std::cout, std::cerr);
}
