#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dbar::cli {

/// Exit codes of the command-line front end.
enum ExitCode : int { kSuccess = 0, kUsage = 1, kRejected = 2, kCompatibility = 3 };

/// Runs one command. `args` excludes the program name. Reports and CSV files
/// go to the output directory; `out` gets a short summary, `err` a single
/// "<category>: <reason>" line on failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dbar::cli
