#include "cachewave/channel.hpp"

#include <cmath>
#include <string>

#include "cachewave/errors.hpp"

namespace cachewave {

void ChannelParams::validate() const {
  auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!positive(lambda1) || !positive(lambda2) || !positive(power)) {
    throw InvalidArgument("channel parameters must be positive: lambda1=" +
                          std::to_string(lambda1) +
                          " lambda2=" + std::to_string(lambda2) +
                          " power=" + std::to_string(power));
  }
}

double power_from_snr_db(double snr_db) noexcept {
  return std::pow(10.0, snr_db / 10.0);
}

GainDraw sample_gains(const ChannelParams& ch, RandomStream& rng) noexcept {
  GainDraw d;
  d.g1_lt = sample_gain(ch.lambda1, rng);
  d.g1_ht = sample_gain(ch.lambda1, rng);
  d.g2_lt = sample_gain(ch.lambda2, rng);
  d.g2_ht = sample_gain(ch.lambda2, rng);
  return d;
}

}  // namespace cachewave
