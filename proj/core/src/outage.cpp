#include "cachewave/outage.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cachewave/quadrature.hpp"

namespace cachewave::outage {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double quad(const std::function<double(double)>& f, double lo, double hi) {
  return integrate(f, lo, hi, kStpRelTol).value;
}

}  // namespace

double combined_snr_survival(double lambda, double power, HtShares shares,
                             double threshold) {
  if (threshold <= 0.0) return 1.0;
  const double lead = std::exp(-lambda * threshold / power);
  if (shares.wanted <= 0.0) return lead;

  // Conditioned on the LT gain y, the HT term must cover c = T - P*y, which
  // is impossible once c reaches the SINR ceiling wanted/interference.
  const double ceiling = shares.interference > 0.0
                             ? shares.wanted / shares.interference
                             : kInf;
  double y_lo = 0.0;
  if (threshold > ceiling) {
    y_lo = (threshold - ceiling) / power + kSingularInset;
  }
  const double y_hi = threshold / power;
  auto integrand = [&](double y) {
    const double c = threshold - power * y;
    const double denom =
        shares.wanted * power - shares.interference * power * c;
    if (denom <= 0.0) return 0.0;
    return lambda * std::exp(-lambda * (y + c / denom));
  };
  return lead + quad(integrand, y_lo, y_hi);
}

double weighted_gain_sum_survival(double lambda, double weight, double t) {
  if (t <= 0.0) return 1.0;
  const double x = lambda * t;
  if (weight <= 0.0) return std::exp(-x);
  // (e^{-x} - w e^{-x/w}) / (1 - w) rewritten as
  // e^{-x} (1 + x * (1 - e^{-d}) / d) with d = x (1 - w) / w.
  const double d = x * (1.0 - weight) / weight;
  const double ratio = d == 0.0 ? 1.0 : -std::expm1(-d) / d;
  return std::exp(-x) * (1.0 + x * ratio);
}

double parallel_capacity_survival(double lambda, double power, double share,
                                  double total_rate) {
  if (total_rate <= 0.0) return 1.0;
  const double x_hi = std::expm1(total_rate) / power;
  const double lead = std::exp(-lambda * x_hi);
  if (share <= 0.0) return lead;
  const double target = std::exp(total_rate);
  auto integrand = [&](double x) {
    const double need = std::max(0.0, (target / (1.0 + power * x) - 1.0) /
                                          (share * power));
    return lambda * std::exp(-lambda * (x + need));
  };
  return lead + quad(integrand, 0.0, x_hi);
}

double interfered_parallel_capacity_survival(double lambda, double power,
                                             HtShares shares,
                                             double total_rate) {
  if (total_rate <= 0.0) return 1.0;
  const double x_hi = std::expm1(total_rate) / power;
  const double lead = std::exp(-lambda * x_hi);
  if (shares.wanted <= 0.0) return lead;
  const double target = std::exp(total_rate);

  // The HT term is bounded by log(1 + wanted/interference), so LT gains below
  // (interference*e^{2R} - 1)/P can never be rescued.
  double x_lo = 0.0;
  if (shares.interference > 0.0) {
    const double bound = (shares.interference * target - 1.0) / power;
    if (bound > 0.0) x_lo = bound + kSingularInset;
  }
  if (x_lo >= x_hi) return lead;
  auto integrand = [&](double x) {
    const double c = target / (1.0 + power * x) - 1.0;
    if (c <= 0.0) return lambda * std::exp(-lambda * x);
    const double denom =
        shares.wanted * power - shares.interference * power * c;
    if (denom <= 0.0) return 0.0;
    return lambda * std::exp(-lambda * (x + c / denom));
  };
  return lead + quad(integrand, x_lo, x_hi);
}

double snr_survival(double lambda, double snr_scale, double rate) {
  if (rate <= 0.0) return 1.0;
  if (snr_scale <= 0.0) return 0.0;
  return std::exp(-lambda * std::expm1(rate) / snr_scale);
}

double sinr_survival(double lambda, double power, HtShares shares,
                     double rate) {
  if (rate <= 0.0) return 1.0;
  if (shares.wanted <= 0.0) return 0.0;
  if (shares.interference > 0.0 &&
      rate >= std::log1p(shares.wanted / shares.interference)) {
    return 0.0;
  }
  const double theta = std::expm1(rate);
  const double denom =
      shares.wanted * power - shares.interference * power * theta;
  if (denom <= 0.0) return 0.0;
  return std::exp(-lambda * theta / denom);
}

}  // namespace cachewave::outage
