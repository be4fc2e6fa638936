#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace stabevo {

// Exit codes shared by every subcommand.
inline constexpr int exit_ok = 0;
inline constexpr int exit_target_missed = 2;
inline constexpr int exit_usage = 64;
inline constexpr int exit_data = 65;
inline constexpr int exit_internal = 70;

// Runs the command line given as argv-style words (without the program
// name). All regular output goes to out, diagnostics to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace stabevo
