#pragma once

#include <iosfwd>

namespace eomsim::cli {

// Exit codes of the eomsim tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;    // bad flags, config or input files
inline constexpr int kExitNumeric = 3;  // solver or numeric failure
inline constexpr int kExitOutOfBand = 4;

// Runs the tool with the given arguments. Data goes to files (metrics to
// `out`), diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace eomsim::cli
