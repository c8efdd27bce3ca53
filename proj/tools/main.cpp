#include <iostream>

#include "sival/cli.hpp"

int main(int argc, char** argv)
{
    return sival::cli::run(argc, argv, std::cout, std::cerr);
}
