#pragma once

#include "avlab/config.hpp"

namespace avlab {

/// Exit codes used by the CLI.
enum ExitCode {
    kOk = 0,
    kParseError = 2,
    kValidationError = 3,
    kNumericError = 4,
    kNoConvergence = 5,
    kVerifyFailure = 6,
};

/// Dispatch a validated config: runs the subcommand and writes its CSV /
/// field / pixmap outputs plus a resolved-config echo into cfg.out.
/// Returns an ExitCode; never throws.
int run(const RunConfig& cfg);

}  // namespace avlab
