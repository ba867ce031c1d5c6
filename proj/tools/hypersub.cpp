#include <iostream>

#include "hypersub/cli.hpp"

int main(int argc, char** argv) {
    return hypersub::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
