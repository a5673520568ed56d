#include "tseq/cli.hpp"

int main(int argc, char** argv) {
    return tseq::cli::run_cli(argc, argv);
}
