#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace pollard {

// Exit statuses of the command-line front end.
enum ExitStatus : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitViolation = 2,
  kExitInternal = 3,
};

// Environment variable naming the sweep config used when --config is absent.
inline constexpr const char* kConfigEnvVar = "POLLARDKIT_CONFIG";

// Runs one invocation; args excludes the program name. Subcommands:
// spectrum, check, certify, sweep.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pollard
