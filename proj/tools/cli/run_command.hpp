#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace pathcalc::cli {

// Result of one command invocation. Exit codes follow the usual convention:
// 0 for success or a true verdict, 1 for a false or rejected verdict (and
// for exhausted search bounds), 2 for usage and parse errors. `output` is
// the full stdout payload, help and error text included.
struct CommandOutcome {
  int exit_code = 0;
  std::string output;
};

// Dispatches one invocation. `argv` excludes the program name, e.g.
// {"path", "normalize", "sigma(sigma(t))"}. Positional terms and words may
// be omitted from argv, in which case they are taken from `stdin_text`, one
// per non-empty line, in declaration order; proof scripts are only ever
// read from files. The outcome is deterministic: identical argv and stdin
// produce byte-identical output.
CommandOutcome run_command(const std::vector<std::string>& argv,
                           std::string_view stdin_text = "");

// Variant for callers that want stdin pulled only on demand: `read_stdin`
// is invoked at most once, and only when some positional argument is
// actually missing from argv. The interactive binary uses this so that
// commands with all arguments on the command line never touch stdin.
CommandOutcome run_command(const std::vector<std::string>& argv,
                           std::function<std::string()> read_stdin);

}  // namespace pathcalc::cli
