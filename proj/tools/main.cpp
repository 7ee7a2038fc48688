#include "e3dsim/cli.hpp"

int main(int argc, char** argv) {
    return e3dsim::run_cli(argc, argv);
}
