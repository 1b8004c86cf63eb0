#pragma once

#include <nlohmann/json.hpp>
#include <string>

namespace qsym::cmd {

using nlohmann::json;

// CLI/exit status codes, shared with the C API.
enum Status {
  kOk = 0,
  kUsage = 1,
  kNumericFailure = 2,
  kFragile = 3,
  kInconclusive = 4,
};

struct CommandResult {
  int exit_code = kOk;
  json report;
};

// Dispatch a named command with a JSON request. Never throws; failures are
// reported through the exit code and an "error" field in the report.
CommandResult run_command(const std::string& command, const json& request);

std::vector<std::string> command_names();

}  // namespace qsym::cmd
