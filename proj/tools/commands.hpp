#ifndef STQA_TOOLS_COMMANDS_HPP_
#define STQA_TOOLS_COMMANDS_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace stqa::cli {

enum ExitCode : int {
  kSuccess = 0,
  kRuntimeFailure = 1,
  kValidationFailure = 2,
  kInsufficientData = 3,
};

/// Runs the command line `args` (args[0] is the program name). Summary lines
/// go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace stqa::cli

#endif  // STQA_TOOLS_COMMANDS_HPP_
