#include "simrec/cli.hpp"

int main(int argc, char** argv) {
    return simrec::cli::run(argc, argv);
}
