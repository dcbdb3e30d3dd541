#include <string>
#include <vector>

#include "minami/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return minami::cli::run(std::move(args));
}
