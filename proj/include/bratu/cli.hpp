#pragma once

#include <iosfwd>

namespace bratu::cli {

enum ExitCode : int {
  kOk = 0,
  kInvalidArguments = 2,
  kNonConvergence = 3,
  kNumericalFailure = 4,
};

/// Entry point of the `bratu` command-line tool. Primary output goes to
/// `--output <path>` when given, otherwise to `out`; diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bratu::cli
