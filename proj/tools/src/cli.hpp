#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tsd::cli {

enum ExitCode : int { ok = 0, property_failed = 1, usage_error = 2 };

struct CommandOutcome {
  int exit_code = ok;
  std::string report;  // standard output
};

/// Runs one subcommand. `args` excludes the program name; diagnostics go to `err`.
CommandOutcome run(const std::vector<std::string>& args, std::ostream& err);

}  // namespace tsd::cli
