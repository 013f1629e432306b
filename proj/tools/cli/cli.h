#pragma once

// The sensfeat command line: audit, validate, encode, synth, compare.

#include <iosfwd>

namespace sensfeat::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitData = 3;
inline constexpr int kExitNumerical = 4;

// Runs one command. Reports go to `out`, diagnostics to `err`. Output files
// are written only after the whole computation has succeeded.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sensfeat::cli
