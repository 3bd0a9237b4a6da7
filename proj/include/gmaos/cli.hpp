#pragma once

#include <iosfwd>

namespace gmaos {

inline constexpr int kExitOk = 0;
inline constexpr int kExitSolverFailure = 1;
inline constexpr int kExitUsage = 2;

/// Entry point of the `gmaos` command-line tool (subcommands solve, bench,
/// check-grad). Returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gmaos
