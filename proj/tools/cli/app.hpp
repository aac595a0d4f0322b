#pragma once

#include <functional>
#include <iosfwd>

#include "commands.hpp"

namespace cachewave::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumeric = 3;
inline constexpr int kExitCheck = 4;

using Runner =
    std::function<CommandOutput(Command, const ExperimentConfig&, bool)>;

/// Full command line handling. CSV goes to `out` unless --out or the config
/// names a file; diagnostics go to `err`. Returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err, const Runner& runner = run_command);

}  // namespace cachewave::cli
