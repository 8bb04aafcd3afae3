#pragma once

// Command-line front end. run() does all the work so tests can drive it
// without a process; main() only forwards argv and prints.
//
// Exit codes: 0 success or member, 1 definite negative (not a member, a
// lemma or sweep check failed), 2 usage, I/O or infeasibility error.

#include <string>
#include <vector>

namespace gdet::cli {

struct CommandResult {
  int exit_code = 0;
  std::string out;  // payload, line oriented
  std::string err;  // diagnostics
};

/// args excludes the program name.
CommandResult run(const std::vector<std::string>& args);

}  // namespace gdet::cli
