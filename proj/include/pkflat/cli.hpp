#pragma once

// Command-line front end. Exit codes: 0 positive verdict, 2 mathematical
// negative (not a cover, no return, forbidden branch configuration),
// 1 malformed input or usage.

#include <iosfwd>
#include <string>
#include <vector>

namespace pkflat {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitNegative = 2;

/// Runs one command line (without the program name), writing reports to
/// `out` and diagnostics to `err`.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pkflat
