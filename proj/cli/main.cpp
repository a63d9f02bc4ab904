#include <iostream>

#include "run.hpp"

int main(int argc, char** argv) {
    return unicrit::cli::run_cli(argc, argv, std::cout, std::cerr);
}
