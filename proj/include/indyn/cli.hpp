#pragma once

#include <ostream>

namespace indyn::io {

// Exit codes of run_cli.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitVerification = 2;
inline constexpr int kExitNumerical = 3;

//   indyn simulate CONFIG [--out DIR]      (DIR defaults to $INDYN_OUT, else ".")
//   indyn verify CONFIG [--trajectories CSV] [--events JSONL] [--report FILE]
//   indyn plot CONFIG --svg FILE [--width W] [--height H]
//   indyn events CONFIG
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace indyn::io
