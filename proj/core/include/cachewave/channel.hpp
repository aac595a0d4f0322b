#pragma once

#include <cmath>

#include "cachewave/random.hpp"

namespace cachewave {

/// Rayleigh block-fading model of the two server-to-cache links.
///
/// Channel power gains are exponential with rate lambda (mean 1/lambda). The
/// noise variance is fixed at one, so `power` is the linear transmit SNR.
struct ChannelParams {
  double lambda1 = 1.0;
  double lambda2 = 0.1;
  double power = 10.0;

  /// Throws InvalidArgument unless all three fields are positive and finite.
  void validate() const;
};

/// One realization of the four channel power gains: a placement-period (LT)
/// and a delivery-period (HT) gain for each cache. All entries are >= 0.
struct GainDraw {
  double g1_lt = 0.0;
  double g1_ht = 0.0;
  double g2_lt = 0.0;
  double g2_ht = 0.0;
};

/// 10^(snr_db / 10).
double power_from_snr_db(double snr_db) noexcept;

/// Exponential variate with rate `lambda` by inverse CDF, -ln(U)/lambda with
/// U on (0,1].
inline double sample_gain(double lambda, RandomStream& rng) noexcept {
  return -std::log(rng.uniform_open_closed()) / lambda;
}

/// Draws g1_lt, g1_ht, g2_lt, g2_ht in that order.
GainDraw sample_gains(const ChannelParams& ch, RandomStream& rng) noexcept;

}  // namespace cachewave

