#pragma once

#include <iosfwd>

namespace wigcoh {

inline constexpr int kExitOk = 0;
inline constexpr int kExitIo = 1;
inline constexpr int kExitInvalidConfig = 2;
inline constexpr int kExitQuadratureFailure = 3;

// Entry point of the `sweep` tool. Grid data goes to --out (or `out` for "-"),
// diagnostics to `err`. Returns the process exit code.
int run_sweep_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace wigcoh
