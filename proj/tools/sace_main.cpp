#include "sace/cli.hpp"

int main(int argc, char** argv) {
    return sace::cli::run(argc, argv);
}
