#include <string>
#include <vector>

#include "specbm/cli.hpp"

int main(int argc, char** argv) {
    return specbm::run_cli(std::vector<std::string>(argv + 1, argv + argc));
}
