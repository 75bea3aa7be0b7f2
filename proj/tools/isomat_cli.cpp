#include <vector>

#include "isomat/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return isomat::cli::run_command(args);
}
