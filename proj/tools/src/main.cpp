#include <iostream>

#include "turlab_cli/cli.hpp"

int main(int argc, char** argv)
{
    return turlab::cli::run(argc, argv, std::cout, std::cerr);
}
