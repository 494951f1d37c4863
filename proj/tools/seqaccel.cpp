#include <iostream>

#include <seqaccel/cli.hpp>

int main(int argc, char** argv) {
    return seqaccel::run_main(argc, argv, std::cout, std::cerr);
}
