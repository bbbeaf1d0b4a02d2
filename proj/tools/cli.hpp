#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace calogero::cli {

enum ExitCode : int {
  kOk = 0,
  kVerificationFailed = 1,
  kNumericalFailure = 2,
  kConfigError = 3,
};

/// Reference initial soliton velocities the presets are checked against.
struct PresetTarget {
  double re;
  double im;
};

/// Parses argv and dispatches verify | init | evolve | hydro | preset.
/// Progress and reports go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace calogero::cli
