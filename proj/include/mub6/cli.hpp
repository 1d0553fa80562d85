#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mub6 {

/// Exit codes of the mub6 command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,    ///< bad flags, out-of-domain parameters
  kExitVerdict = 2,  ///< a check or verdict failed, or a solver gave up
  kExitIo = 3,       ///< unreadable or malformed input, unwritable output
};

/// Runs the tool with args (args[0] is the program name) writing results to
/// `out` and diagnostics to `err`. Returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mub6
