#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace svf::cli {

enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,   // battery failure, envelope violation, counterexample mismatch
  kParseError = 2,    // malformed document or arguments
  kContractError = 3, // input violates an operation's precondition
};

/// Runs the tool on `args` (without the program name). Reports go to `out`
/// unless --output is given; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace svf::cli
