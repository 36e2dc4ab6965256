#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace symred::cli {

enum ExitCode { kOk = 0, kUsage = 1, kFlagged = 2 };

/// Runs one command line (args excludes the program name) and returns the
/// exit code. Reports go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace symred::cli
