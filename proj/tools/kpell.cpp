#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "kpell/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        return kpell::cli::run(args, std::cout, std::cerr);
    } catch (const std::exception& e) {
        std::cerr << "kpell: " << e.what() << '\n';
        return 1;
    }
}
