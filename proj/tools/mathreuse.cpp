#include <iostream>

#include "mathreuse/cli/cli.hpp"

int main(int argc, char** argv) {
    return mathreuse::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
