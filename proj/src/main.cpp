#include "swiptlab/cli.hpp"

int main(int argc, char** argv) {
    return swiptlab::cli_main({argv + 1, argv + argc});
}
