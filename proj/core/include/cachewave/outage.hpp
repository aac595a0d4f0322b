#pragma once

// Success probabilities of single-cache decoding events under Rayleigh fading.
//
// Every STP factor reduces to one of the events below, evaluated for one
// cache whose LT gain l and HT gain h are i.i.d. exponential with rate
// `lambda`. The HT symbol carries a wanted share and an interfering share of
// the transmit power (alpha^2 and 1 - alpha^2 in some order).

namespace cachewave::outage {

/// Power shares of the superposed HT symbol as seen by one decoding step.
struct HtShares {
  double wanted = 1.0;
  double interference = 0.0;
};

/// Pr( P*l + wanted*P*h / (1 + interference*P*h) >= threshold ).
///
/// MRC of the buffered LT copy with an interference-limited HT copy. Computed
/// as exp(-lambda*threshold/P) plus a quadrature over the LT gain, whose lower
/// limit is clamped at zero; the integrand vanishes where the HT SINR ceiling
/// wanted/interference is reached.
double combined_snr_survival(double lambda, double power, HtShares shares,
                             double threshold);

/// Pr( l + weight*h >= t ), the hypoexponential tail. Stable for weight -> 1
/// and weight -> 0.
double weighted_gain_sum_survival(double lambda, double weight, double t);

/// Pr( log(1 + P*l) + log(1 + share*P*h) >= total_rate ).
double parallel_capacity_survival(double lambda, double power, double share,
                                  double total_rate);

/// Pr( log(1 + P*l) + log(1 + wanted*P*h / (1 + interference*P*h))
///     >= total_rate ).
double interfered_parallel_capacity_survival(double lambda, double power,
                                             HtShares shares,
                                             double total_rate);

/// Pr( log(1 + snr_scale*g) >= rate ).
double snr_survival(double lambda, double snr_scale, double rate);

/// Pr( log(1 + wanted*P*h / (1 + interference*P*h)) >= rate ). Zero once the
/// rate reaches the interference-limited ceiling log(1 + wanted/interference).
double sinr_survival(double lambda, double power, HtShares shares,
                     double rate);

/// Endpoint inset applied on the side of an integral where the integrand
/// denominator vanishes.
inline constexpr double kSingularInset = 1e-12;

/// Relative tolerance used for every quadrature behind the STP factors.
inline constexpr double kStpRelTol = 1e-9;

}  // namespace cachewave::outage
