#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace numberless::cli {

// Exit codes of every command.
inline constexpr int kSuccess = 0;
inline constexpr int kViolation = 1;
inline constexpr int kInputError = 2;

// Runs one command line (without the program name). Regular output goes to
// `out` unless --out names a file; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace numberless::cli
