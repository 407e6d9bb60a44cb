#pragma once

#include <string>
#include <vector>

namespace specbm {

/**
 * Entry point of the command-line tool. `args` holds the arguments without
 * the program name. Returns 0 on success, 1 when a pipeline or solver fails
 * on valid input, and 2 for usage errors, unreadable paths, or malformed
 * files and configs. Errors are reported on stderr.
 */
int run_cli(std::vector<std::string> args);

}  // namespace specbm
