#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cli/run_command.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  // stdin is read lazily, only when a positional argument is missing, so
  // fully-specified invocations work in pipelines without consuming input.
  pathcalc::cli::CommandOutcome outcome =
      pathcalc::cli::run_command(args, [] {
        std::ostringstream buffer;
        buffer << std::cin.rdbuf();
        return buffer.str();
      });
  std::cout << outcome.output;
  return outcome.exit_code;
}
