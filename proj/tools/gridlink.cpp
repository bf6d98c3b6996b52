#include "gridlink/commands.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return gridlink::run_cli(argc, argv, std::cout, std::cerr);
}
