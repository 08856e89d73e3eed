#include "pdsearch/cli.hpp"

int main(int argc, char** argv) {
    return pdsearch::cli::run(argc, argv);
}
