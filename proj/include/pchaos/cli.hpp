// Apache License, Version 2.0, refer to LICENSE.txt
#pragma once

#include <iosfwd>

namespace pchaos {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

/// Parses arguments and dispatches one subcommand. CSV goes to `out`,
/// diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pchaos
