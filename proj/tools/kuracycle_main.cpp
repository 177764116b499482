#include <iostream>
#include <string>
#include <vector>

#include "kuracycle/cli.hpp"

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv, argv + argc);
    return kuracycle::cli::run(args, std::cout, std::cerr);
}
