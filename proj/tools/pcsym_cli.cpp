#include <iostream>
#include <string>
#include <vector>

#include "pcsym/cli.hpp"

int main(int argc, char **argv)
{
    return pcsym::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
