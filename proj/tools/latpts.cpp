#include "latpts/cli.hpp"

#include <cstdlib>
#include <unistd.h>

int main(int argc, char **argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    bool color = std::getenv("NO_COLOR") == nullptr && isatty(STDERR_FILENO);
    return latpts::cli::run(args, std::cin, std::cout, std::cerr, color);
}
