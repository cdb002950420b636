#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace entropic::cli {

/// Exit status contract: 0 success, 1 a checked statement failed (theorem law
/// or reproduction value), 2 invalid input or configuration.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Runs one command line (without the program name). Reports go to `out` or
/// to the --out file; diagnostics go to `err`. Nothing is written to the
/// report destination on error paths.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace entropic::cli
