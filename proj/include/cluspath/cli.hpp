#pragma once

#include <string>
#include <vector>

namespace cluspath {

/// Entry point behind the command-line tool. Subcommands: solve, path, bench,
/// synth. Returns 0 on full success, 2 when any solve failed to converge,
/// 1 on errors (bad flags, unreadable input, invalid configuration).
int main_cli(int argc, const char* const* argv);

/// Convenience for tests: args exclude the program name.
int main_cli(const std::vector<std::string>& args);

}  // namespace cluspath
