#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace blowup::cli {

inline constexpr int kExitOk = 0;
// Numerical failure during a run (e.g. a density turning negative).
inline constexpr int kExitFailure = 1;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitVerifyFailed = 3;

// Subcommands: check, simulate, verify, sweep, report. args excludes the
// program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace blowup::cli
