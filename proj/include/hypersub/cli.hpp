#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hypersub::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitGuardError = 3;

// Runs the `hypersub` command line with args[0] as the program name. Reports
// go to `out` (or into --out), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hypersub::cli
