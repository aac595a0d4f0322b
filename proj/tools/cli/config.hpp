#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cachewave/channel.hpp"
#include "cachewave/mc.hpp"
#include "cachewave/opt.hpp"
#include "cachewave/stp.hpp"

namespace cachewave::cli {

/// Malformed or inconsistent configuration. Maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Command { eval, optimize, fig3, fig4, fig5 };

std::string_view to_string(Command c) noexcept;
std::optional<Command> parse_command(std::string_view text) noexcept;

/// Operating point for `eval`. With optimize_inputs the allocation fields are
/// replaced by the optimizer's argmax for each method.
struct PointConfig {
  double snr_db = 10.0;
  double alpha = 0.70710678118654752;
  double r = 1.0;
  double r_tilde = 1.0;
  std::optional<double> r1;        // defaults to r
  std::optional<double> r_tilde1;  // defaults to r_tilde
  bool optimize_inputs = false;

  RateConfig rates() const;
};

struct OptimizerConfig {
  Strategy strategy = Strategy::grid;
  ObjectiveKind objective = ObjectiveKind::jensen;
  std::size_t resolution = 101;
  GaParams ga;
};

struct ExperimentConfig {
  double lambda1 = 1.0;
  double lambda2 = 0.1;
  std::vector<Method> methods;  // empty: command default
  std::vector<double> snr_db;   // empty: command default
  std::vector<double> rates;    // empty: command default
  /// Total rate R = R~ for optimize, fig3 and fig5.
  double rate = 1.0;
  PointConfig point;
  OptimizerConfig optimizer;
  McConfig mc;
  std::string output;
  std::uint64_t seed = 0x5eedc0deULL;

  ChannelParams channel(double snr_db) const;
};

/// Parses a JSON document. Every field is optional; unknown keys are errors.
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);

/// Canonical JSON of the effective configuration, keys sorted.
std::string canonical_json(const ExperimentConfig& cfg);

/// 64-bit FNV-1a, printed as 16 hex digits.
std::string fnv1a_hex(std::string_view bytes);

}  // namespace cachewave::cli
