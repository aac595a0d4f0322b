#pragma once

#include <string>
#include <vector>

#include "config.hpp"

namespace cachewave::cli {

inline constexpr const char* kToolVersion = CACHEWAVE_VERSION;

struct CommandOutput {
  std::string csv;
  /// One message per failed `--check` comparison.
  std::vector<std::string> check_failures;
};

/// Runs a command to completion. Throws ConfigError for unusable settings
/// and cachewave::Error for numeric failures.
CommandOutput run_command(Command command, const ExperimentConfig& cfg,
                          bool check);

/// `#` preamble lines: tool version, command, seed, config digest, units.
std::vector<std::string> preamble(Command command, const ExperimentConfig& cfg);

}  // namespace cachewave::cli
