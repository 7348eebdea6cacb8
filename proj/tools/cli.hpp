#pragma once

#include <iosfwd>

namespace graceful::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRefused = 1;
inline constexpr int kExitUsage = 2;

/// Runs the `graceful` command line. Results go to `out`, diagnostics to
/// `err`. Returns the process exit status.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace graceful::cli
