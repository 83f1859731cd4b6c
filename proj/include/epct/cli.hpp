#pragma once

// The `epct` command line: classify, simulate-ode, sweep, simulate-pde and
// trace. Exit codes: 0 success or certified, 1 usage or configuration
// error, 2 solver or internal failure, 3 outside the regions or not
// certified.

#include <iosfwd>

namespace epct {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitFailure = 2;
inline constexpr int kExitNotCertified = 3;

/// Runs one command line. Normal output goes to `out`, diagnostics to `err`;
/// --out redirects normal output to a file (a directory for simulate-pde).
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace epct
