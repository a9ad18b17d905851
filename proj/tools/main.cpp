#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) {
    int code = 0;
    auto cfg = shiftlab::cli::parse_args(argc, argv, std::cerr, code);
    if (!cfg) return code;
    return shiftlab::cli::run(*cfg, std::cout, std::cerr);
}
