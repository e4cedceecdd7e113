#pragma once

#include <ostream>

namespace rellich::cli {

enum ExitCode { kOk = 0, kViolated = 1, kUsage = 2, kUnsupported = 3, kNumerical = 4 };

// Full command-line entry point; output goes to out, diagnostics to err.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rellich::cli
