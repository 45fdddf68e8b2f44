#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace frogrange {

enum ExitCode : int { kExitOk = 0, kExitUsage = 2, kExitDomain = 3 };

/// Runs one command line (args excludes the program name) and returns the
/// process exit code. Normal output goes to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace frogrange
