#pragma once

#include <iosfwd>

namespace bskernel::cli {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitPropertyFails = 3;

// Runs the bskernel command line with argv[0] as program name. Output goes to
// `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bskernel::cli
