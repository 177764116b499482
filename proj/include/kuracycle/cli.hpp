#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "kuracycle/model.hpp"

namespace kuracycle::cli {

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kAssertionFailed = 1;
inline constexpr int kUsageError = 2;

/// Parses "1.5-0.25i", "-2", "3i", "-i".  Throws std::invalid_argument.
Complex parse_complex(const std::string& text);

/// Comma-separated list of complex literals.
std::vector<Complex> parse_complex_list(const std::string& text);

/// Runs the command line `args` (args[0] is the program name).  Reports go
/// to `out` (or the --out file), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kuracycle::cli
