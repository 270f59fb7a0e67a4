#include <string>
#include <vector>

#include "rmtlab/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return rmtlab::cli::run_main(args);
}
