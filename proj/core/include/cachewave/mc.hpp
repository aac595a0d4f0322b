#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "cachewave/channel.hpp"
#include "cachewave/stp.hpp"

namespace cachewave {

/// physical: one shared GainDraw per trial, joint success events.
/// formula_faithful: every factor of the analytic product is estimated on its
/// own independent draws and the estimates are multiplied as the analytic
/// formula does.
enum class McMode { formula_faithful, physical };

std::string_view to_string(McMode m) noexcept;
std::optional<McMode> parse_mc_mode(std::string_view text) noexcept;

struct McConfig {
  std::uint64_t n_trials = 1'000'000;
  std::uint64_t seed = 0x5eedc0deULL;
  McMode mode = McMode::physical;
  /// Trials per substream. Part of the seed -> result contract.
  std::uint64_t batch_size = 1u << 16;
  /// Worker threads; 0 uses std::thread::hardware_concurrency(). Results do
  /// not depend on this value.
  unsigned threads = 0;

  void validate() const;
};

struct McEstimate {
  double mean = 0.0;
  /// sqrt(mean * (1 - mean) / n_trials).
  double std_err = 0.0;
  std::uint64_t n_trials = 0;
  McMode mode = McMode::physical;
};

struct CacheOutcome {
  bool cache1_ok = false;
  bool cache2_ok = false;
};

/// Per-cache success of `method` on a single channel realization.
CacheOutcome trial_success(Method method, const ChannelParams& ch,
                           const GainDraw& draw, PowerSplit alpha,
                           const RateConfig& rates);

/// Defining event of one factor, evaluated on the LT and HT gains of the cache
/// that factor belongs to. Factors that involve only one period ignore the
/// other gain.
bool factor_event(FactorId id, const ChannelParams& ch, PowerSplit alpha,
                  const RateConfig& rates, double lt_gain, double ht_gain);

/// 1 or 2.
int factor_cache(FactorId id) noexcept;

/// STP estimate. Formula-faithful mode multiplies the exact-event factors,
/// so it targets evaluate_stp(..., GammaMode::exact).
McEstimate estimate_stp(const ChannelParams& ch, PowerSplit alpha,
                        const RateConfig& rates, Method method,
                        const McConfig& cfg);

/// Frequency of one factor's defining event over cfg.n_trials independent
/// draws. cfg.mode is recorded but does not change the estimate.
McEstimate estimate_factor(FactorId id, const ChannelParams& ch,
                           PowerSplit alpha, const RateConfig& rates,
                           const McConfig& cfg);

/// Looks the factor up by name; throws UnknownFactor.
McEstimate estimate_factor(std::string_view factor_name,
                           const ChannelParams& ch, PowerSplit alpha,
                           const RateConfig& rates, const McConfig& cfg);

/// Binomial standard error sqrt(p (1 - p) / n).
double binomial_std_err(double p, std::uint64_t n) noexcept;

}  // namespace cachewave
