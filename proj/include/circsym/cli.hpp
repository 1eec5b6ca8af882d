#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace circsym {

/// Exit codes of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitData = 2, kExitNumerical = 3 };

/// Runs the `circsym` command line with args[0] being the program name.
/// Writes results to `out` and diagnostics to `err`; returns an ExitCode.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace circsym
