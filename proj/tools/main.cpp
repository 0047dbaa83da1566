#include "sketchplan/cli/cli.hpp"

int main(int argc, char **argv) {
    return sketchplan::cli::run_cli(argc, argv);
}
