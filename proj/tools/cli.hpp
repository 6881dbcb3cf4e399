#pragma once

#include <ostream>

namespace cyclelsi::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kViolation = 1;
inline constexpr int kUsage = 2;
inline constexpr int kNonConvergence = 3;

/// Runs one command line. Reports go to `out` (or to --out FILE), diagnostics
/// to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cyclelsi::cli
