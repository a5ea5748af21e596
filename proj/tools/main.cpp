#include "valuation/cli.hpp"

int main(int argc, char** argv) {
    return valuation::cli::run_main(argc, argv);
}
