#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace stdisc::cli {

/// Exit statuses shared by every subcommand.
enum ExitCode : int {
  kPass = 0,
  kFail = 1,
  kConfigError = 2,
  kDegenerate = 3,
};

/// Runs the command line `args` (args[0] is the program name). Diagnostics go
/// to `err`; anything not written to --out goes to `out`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace stdisc::cli
