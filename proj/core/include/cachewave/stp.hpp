#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "cachewave/channel.hpp"

namespace cachewave {

/// Superposition coefficient of the delivery-period symbol
/// S = alpha*X2 + sqrt(1 - alpha^2)*X~1. Cache 1 wants X2 (share alpha^2),
/// cache 2 wants X~1 (share 1 - alpha^2).
struct PowerSplit {
  double alpha = 0.0;

  double x2_share() const noexcept { return alpha * alpha; }
  double x1_tilde_share() const noexcept { return 1.0 - alpha * alpha; }
  void validate() const;
};

/// Packet rates and their sub-packet split, all in nats per channel use.
///
/// Packet X (for cache 1) has rate r, split as r1 + r2 = 2r; packet X~ (for
/// cache 2) has rate r_tilde, split as r_tilde1 + r_tilde2 = 2 r_tilde.
struct RateConfig {
  double r = 0.0;
  double r_tilde = 0.0;
  double r1 = 0.0;
  double r_tilde1 = 0.0;

  double r2() const noexcept { return std::max(0.0, 2.0 * r - r1); }
  double r_tilde2() const noexcept {
    return std::max(0.0, 2.0 * r_tilde - r_tilde1);
  }
  void validate() const;

  /// r1 = r and r_tilde1 = r_tilde.
  static RateConfig equal_split(double r, double r_tilde) {
    return RateConfig{r, r_tilde, r, r_tilde};
  }
};

/// Cache-side decoding and buffering strategies.
enum class Method {
  M1_joint_sic,       ///< MRC + SIC, joint decoding of both sub-packets
  M2_joint_nosic,     ///< joint decoding, interference treated as noise
  M3_separate_sic,    ///< MRC + SIC, sub-packets decoded separately
  M4_separate_nosic,  ///< separate decoding, interference treated as noise
};

inline constexpr std::array<Method, 4> kAllMethods = {
    Method::M1_joint_sic, Method::M2_joint_nosic, Method::M3_separate_sic,
    Method::M4_separate_nosic};

std::string_view to_string(Method m) noexcept;
/// Short label "M1".."M4".
std::string_view short_name(Method m) noexcept;
/// Accepts either the short label or the full tag; nullopt otherwise.
std::optional<Method> parse_method(std::string_view text) noexcept;

/// How the joint-decoding factors of Methods 1 and 2 are evaluated.
enum class GammaMode { jensen, exact };

std::string_view to_string(GammaMode m) noexcept;
std::optional<GammaMode> parse_gamma_mode(std::string_view text) noexcept;

/// Every per-cache success factor that appears in an STP product.
enum class FactorId {
  eta1,
  eta2,
  gamma1_jensen,
  gamma2_jensen,
  gamma1_exact,
  gamma2_exact,
  gamma_bar1_jensen,
  gamma_bar2_jensen,
  gamma_bar1_exact,
  gamma_bar2_exact,
  breve11,
  breve12,
  breve21,
  breve22,
  hat12,
  hat21,
};

inline constexpr std::array<FactorId, 16> kAllFactors = {
    FactorId::eta1,           FactorId::eta2,
    FactorId::gamma1_jensen,  FactorId::gamma2_jensen,
    FactorId::gamma1_exact,   FactorId::gamma2_exact,
    FactorId::gamma_bar1_jensen, FactorId::gamma_bar2_jensen,
    FactorId::gamma_bar1_exact,  FactorId::gamma_bar2_exact,
    FactorId::breve11,        FactorId::breve12,
    FactorId::breve21,        FactorId::breve22,
    FactorId::hat12,          FactorId::hat21};

std::string_view to_string(FactorId f) noexcept;
/// Throws UnknownFactor for names outside kAllFactors.
FactorId parse_factor_id(std::string_view text);

struct StpReport {
  Method method = Method::M1_joint_sic;
  double stp = 0.0;
  double cache1_success = 0.0;
  double cache2_success = 0.0;
  std::vector<std::pair<FactorId, double>> factors;

  /// Value of a factor used by this report; nullopt if the method has none.
  std::optional<double> factor(FactorId id) const noexcept;
};

// Individual factors. All take alpha in [0, 1]; the boundary values are the
// analytic limits of the interior expressions.

/// MRC success for X~1 at cache 1 (rate r_tilde1).
double eta1(const ChannelParams& ch, PowerSplit alpha, double r_tilde1);
/// MRC success for X2 at cache 2 (rate r2).
double eta2(const ChannelParams& ch, PowerSplit alpha, double r2);

/// Upper bounds on joint decoding after SIC: the probability of the
/// arithmetic-mean SNR event l + share*h >= 2(e^rate - 1)/P.
double gamma1_jensen(const ChannelParams& ch, PowerSplit alpha, double r);
double gamma2_jensen(const ChannelParams& ch, PowerSplit alpha,
                     double r_tilde);

/// Joint decoding after SIC, exact.
double gamma1_exact(const ChannelParams& ch, PowerSplit alpha, double r);
double gamma2_exact(const ChannelParams& ch, PowerSplit alpha,
                    double r_tilde);

/// Joint decoding with the other sub-packet as noise, Jensen bound.
double gamma_bar1_jensen(const ChannelParams& ch, PowerSplit alpha, double r);
double gamma_bar2_jensen(const ChannelParams& ch, PowerSplit alpha,
                         double r_tilde);

/// Joint decoding with the other sub-packet as noise, exact.
double gamma_bar1_exact(const ChannelParams& ch, PowerSplit alpha, double r);
double gamma_bar2_exact(const ChannelParams& ch, PowerSplit alpha,
                        double r_tilde);

/// Separate decoding of each sub-packet, interference removed.
struct BreveGammas {
  double g11 = 1.0;  ///< X1 from the LT copy at cache 1
  double g12 = 1.0;  ///< X2 from the cleaned HT copy at cache 1
  double g21 = 1.0;  ///< X~1 from the cleaned HT copy at cache 2
  double g22 = 1.0;  ///< X~2 from the LT copy at cache 2
};
BreveGammas breve_gammas(const ChannelParams& ch, PowerSplit alpha,
                         const RateConfig& rates);

/// Separate decoding of the HT sub-packet with interference as noise.
struct HatGammas {
  double g12 = 1.0;
  double g21 = 1.0;
};
HatGammas hat_gammas(const ChannelParams& ch, PowerSplit alpha,
                     const RateConfig& rates);

/// Analytic value of one factor at the given operating point.
double factor_value(FactorId id, const ChannelParams& ch, PowerSplit alpha,
                    const RateConfig& rates);

StpReport stp_method1(const ChannelParams& ch, PowerSplit alpha,
                      const RateConfig& rates,
                      GammaMode gamma_mode = GammaMode::jensen);
StpReport stp_method2(const ChannelParams& ch, PowerSplit alpha,
                      const RateConfig& rates,
                      GammaMode gamma_mode = GammaMode::jensen);
StpReport stp_method3(const ChannelParams& ch, PowerSplit alpha,
                      const RateConfig& rates);
StpReport stp_method4(const ChannelParams& ch, PowerSplit alpha,
                      const RateConfig& rates);

/// Dispatches on `method`; gamma_mode is ignored by Methods 3 and 4.
StpReport evaluate_stp(Method method, const ChannelParams& ch,
                       PowerSplit alpha, const RateConfig& rates,
                       GammaMode gamma_mode = GammaMode::jensen);

/// The factors a method multiplies, in product order, for each cache.
struct MethodFactors {
  std::vector<FactorId> cache1;
  std::vector<FactorId> cache2;
};
MethodFactors method_factors(Method method, GammaMode gamma_mode);

/// Product of one cache's factor values, multiplied left to right.
double cache_product(std::span<const double> values) noexcept;

/// (cache1 + cache2) / 2.
inline double average_caches(double cache1, double cache2) noexcept {
  return (cache1 + cache2) / 2.0;
}

/// Builds a report from factor values given in method_factors order. Every
/// STP in the library is formed through cache_product and average_caches, so
/// table-driven callers reproduce evaluate_stp bit for bit.
StpReport compose_report(Method method, GammaMode gamma_mode,
                         std::span<const double> cache1_values,
                         std::span<const double> cache2_values);

/// Clamps a computed probability into [0,1]. Throws ProbabilityRangeError if
/// the required adjustment exceeds 1e-9.
double clamp_probability(double p, std::string_view what);

}  // namespace cachewave
