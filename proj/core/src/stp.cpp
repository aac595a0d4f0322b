#include "cachewave/stp.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "cachewave/errors.hpp"
#include "cachewave/outage.hpp"

namespace cachewave {

namespace {

using outage::HtShares;

void require_rate(double rate, const char* name) {
  if (!std::isfinite(rate) || rate < 0.0) {
    throw InvalidArgument(std::string(name) + " must be a finite rate >= 0");
  }
}

void check_inputs(const ChannelParams& ch, PowerSplit alpha) {
  ch.validate();
  alpha.validate();
}

// Shares seen by cache 1 when X2 is wanted and X~1 interferes, and the mirror
// for cache 2.
HtShares x2_wanted(PowerSplit a) {
  return {a.x2_share(), a.x1_tilde_share()};
}
HtShares x1_tilde_wanted(PowerSplit a) {
  return {a.x1_tilde_share(), a.x2_share()};
}

}  // namespace

void PowerSplit::validate() const {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw InvalidArgument("alpha must lie in [0, 1], got " +
                          std::to_string(alpha));
  }
}

void RateConfig::validate() const {
  require_rate(r, "r");
  require_rate(r_tilde, "r_tilde");
  require_rate(r1, "r1");
  require_rate(r_tilde1, "r_tilde1");
  if (r1 > 2.0 * r || r_tilde1 > 2.0 * r_tilde) {
    std::ostringstream msg;
    msg << "rate split out of range: r1=" << r1 << " (max " << 2.0 * r
        << "), r_tilde1=" << r_tilde1 << " (max " << 2.0 * r_tilde << ")";
    throw InvalidArgument(msg.str());
  }
}

std::string_view to_string(Method m) noexcept {
  switch (m) {
    case Method::M1_joint_sic: return "M1_joint_sic";
    case Method::M2_joint_nosic: return "M2_joint_nosic";
    case Method::M3_separate_sic: return "M3_separate_sic";
    case Method::M4_separate_nosic: return "M4_separate_nosic";
  }
  return "unknown";
}

std::string_view short_name(Method m) noexcept {
  switch (m) {
    case Method::M1_joint_sic: return "M1";
    case Method::M2_joint_nosic: return "M2";
    case Method::M3_separate_sic: return "M3";
    case Method::M4_separate_nosic: return "M4";
  }
  return "M?";
}

std::optional<Method> parse_method(std::string_view text) noexcept {
  for (Method m : kAllMethods) {
    if (text == to_string(m) || text == short_name(m)) return m;
  }
  return std::nullopt;
}

std::string_view to_string(GammaMode m) noexcept {
  return m == GammaMode::jensen ? "jensen" : "exact";
}

std::optional<GammaMode> parse_gamma_mode(std::string_view text) noexcept {
  if (text == "jensen") return GammaMode::jensen;
  if (text == "exact") return GammaMode::exact;
  return std::nullopt;
}

std::string_view to_string(FactorId f) noexcept {
  switch (f) {
    case FactorId::eta1: return "eta1";
    case FactorId::eta2: return "eta2";
    case FactorId::gamma1_jensen: return "gamma1_jensen";
    case FactorId::gamma2_jensen: return "gamma2_jensen";
    case FactorId::gamma1_exact: return "gamma1_exact";
    case FactorId::gamma2_exact: return "gamma2_exact";
    case FactorId::gamma_bar1_jensen: return "gamma_bar1_jensen";
    case FactorId::gamma_bar2_jensen: return "gamma_bar2_jensen";
    case FactorId::gamma_bar1_exact: return "gamma_bar1_exact";
    case FactorId::gamma_bar2_exact: return "gamma_bar2_exact";
    case FactorId::breve11: return "breve11";
    case FactorId::breve12: return "breve12";
    case FactorId::breve21: return "breve21";
    case FactorId::breve22: return "breve22";
    case FactorId::hat12: return "hat12";
    case FactorId::hat21: return "hat21";
  }
  return "unknown";
}

FactorId parse_factor_id(std::string_view text) {
  for (FactorId f : kAllFactors) {
    if (text == to_string(f)) return f;
  }
  throw UnknownFactor("unknown factor '" + std::string(text) + "'");
}

std::optional<double> StpReport::factor(FactorId id) const noexcept {
  for (const auto& [fid, value] : factors) {
    if (fid == id) return value;
  }
  return std::nullopt;
}

double clamp_probability(double p, std::string_view what) {
  constexpr double kSlack = 1e-9;
  if (!(p >= -kSlack && p <= 1.0 + kSlack)) {
    std::ostringstream msg;
    msg << what << " evaluated to " << p << ", outside [0,1]";
    throw ProbabilityRangeError(msg.str());
  }
  return std::clamp(p, 0.0, 1.0);
}

double eta1(const ChannelParams& ch, PowerSplit alpha, double r_tilde1) {
  check_inputs(ch, alpha);
  require_rate(r_tilde1, "r_tilde1");
  return clamp_probability(
      outage::combined_snr_survival(ch.lambda1, ch.power,
                                    x1_tilde_wanted(alpha),
                                    std::expm1(r_tilde1)),
      "eta1");
}

double eta2(const ChannelParams& ch, PowerSplit alpha, double r2) {
  check_inputs(ch, alpha);
  require_rate(r2, "r2");
  return clamp_probability(
      outage::combined_snr_survival(ch.lambda2, ch.power, x2_wanted(alpha),
                                    std::expm1(r2)),
      "eta2");
}

double gamma1_jensen(const ChannelParams& ch, PowerSplit alpha, double r) {
  check_inputs(ch, alpha);
  require_rate(r, "r");
  return clamp_probability(
      outage::weighted_gain_sum_survival(ch.lambda1, alpha.x2_share(),
                                         2.0 * std::expm1(r) / ch.power),
      "gamma1_jensen");
}

double gamma2_jensen(const ChannelParams& ch, PowerSplit alpha,
                     double r_tilde) {
  check_inputs(ch, alpha);
  require_rate(r_tilde, "r_tilde");
  return clamp_probability(
      outage::weighted_gain_sum_survival(ch.lambda2, alpha.x1_tilde_share(),
                                         2.0 * std::expm1(r_tilde) / ch.power),
      "gamma2_jensen");
}

double gamma1_exact(const ChannelParams& ch, PowerSplit alpha, double r) {
  check_inputs(ch, alpha);
  require_rate(r, "r");
  return clamp_probability(
      outage::parallel_capacity_survival(ch.lambda1, ch.power,
                                         alpha.x2_share(), 2.0 * r),
      "gamma1_exact");
}

double gamma2_exact(const ChannelParams& ch, PowerSplit alpha,
                    double r_tilde) {
  check_inputs(ch, alpha);
  require_rate(r_tilde, "r_tilde");
  return clamp_probability(
      outage::parallel_capacity_survival(ch.lambda2, ch.power,
                                         alpha.x1_tilde_share(), 2.0 * r_tilde),
      "gamma2_exact");
}

double gamma_bar1_jensen(const ChannelParams& ch, PowerSplit alpha,
                         double r) {
  check_inputs(ch, alpha);
  require_rate(r, "r");
  return clamp_probability(
      outage::combined_snr_survival(ch.lambda1, ch.power, x2_wanted(alpha),
                                    2.0 * std::expm1(r)),
      "gamma_bar1_jensen");
}

double gamma_bar2_jensen(const ChannelParams& ch, PowerSplit alpha,
                         double r_tilde) {
  check_inputs(ch, alpha);
  require_rate(r_tilde, "r_tilde");
  return clamp_probability(
      outage::combined_snr_survival(ch.lambda2, ch.power,
                                    x1_tilde_wanted(alpha),
                                    2.0 * std::expm1(r_tilde)),
      "gamma_bar2_jensen");
}

double gamma_bar1_exact(const ChannelParams& ch, PowerSplit alpha, double r) {
  check_inputs(ch, alpha);
  require_rate(r, "r");
  return clamp_probability(
      outage::interfered_parallel_capacity_survival(
          ch.lambda1, ch.power, x2_wanted(alpha), 2.0 * r),
      "gamma_bar1_exact");
}

double gamma_bar2_exact(const ChannelParams& ch, PowerSplit alpha,
                        double r_tilde) {
  check_inputs(ch, alpha);
  require_rate(r_tilde, "r_tilde");
  return clamp_probability(
      outage::interfered_parallel_capacity_survival(
          ch.lambda2, ch.power, x1_tilde_wanted(alpha), 2.0 * r_tilde),
      "gamma_bar2_exact");
}

BreveGammas breve_gammas(const ChannelParams& ch, PowerSplit alpha,
                         const RateConfig& rates) {
  check_inputs(ch, alpha);
  rates.validate();
  const double p = ch.power;
  BreveGammas g;
  g.g11 = outage::snr_survival(ch.lambda1, p, rates.r1);
  g.g12 = outage::snr_survival(ch.lambda1, alpha.x2_share() * p, rates.r2());
  g.g21 = outage::snr_survival(ch.lambda2, alpha.x1_tilde_share() * p,
                               rates.r_tilde1);
  g.g22 = outage::snr_survival(ch.lambda2, p, rates.r_tilde2());
  return g;
}

HatGammas hat_gammas(const ChannelParams& ch, PowerSplit alpha,
                     const RateConfig& rates) {
  check_inputs(ch, alpha);
  rates.validate();
  HatGammas g;
  g.g12 = outage::sinr_survival(ch.lambda1, ch.power, x2_wanted(alpha),
                                rates.r2());
  g.g21 = outage::sinr_survival(ch.lambda2, ch.power, x1_tilde_wanted(alpha),
                                rates.r_tilde1);
  return g;
}

double factor_value(FactorId id, const ChannelParams& ch, PowerSplit alpha,
                    const RateConfig& rates) {
  rates.validate();
  switch (id) {
    case FactorId::eta1: return eta1(ch, alpha, rates.r_tilde1);
    case FactorId::eta2: return eta2(ch, alpha, rates.r2());
    case FactorId::gamma1_jensen: return gamma1_jensen(ch, alpha, rates.r);
    case FactorId::gamma2_jensen:
      return gamma2_jensen(ch, alpha, rates.r_tilde);
    case FactorId::gamma1_exact: return gamma1_exact(ch, alpha, rates.r);
    case FactorId::gamma2_exact: return gamma2_exact(ch, alpha, rates.r_tilde);
    case FactorId::gamma_bar1_jensen:
      return gamma_bar1_jensen(ch, alpha, rates.r);
    case FactorId::gamma_bar2_jensen:
      return gamma_bar2_jensen(ch, alpha, rates.r_tilde);
    case FactorId::gamma_bar1_exact:
      return gamma_bar1_exact(ch, alpha, rates.r);
    case FactorId::gamma_bar2_exact:
      return gamma_bar2_exact(ch, alpha, rates.r_tilde);
    case FactorId::breve11: return breve_gammas(ch, alpha, rates).g11;
    case FactorId::breve12: return breve_gammas(ch, alpha, rates).g12;
    case FactorId::breve21: return breve_gammas(ch, alpha, rates).g21;
    case FactorId::breve22: return breve_gammas(ch, alpha, rates).g22;
    case FactorId::hat12: return hat_gammas(ch, alpha, rates).g12;
    case FactorId::hat21: return hat_gammas(ch, alpha, rates).g21;
  }
  throw UnknownFactor("unhandled factor id");
}

MethodFactors method_factors(Method method, GammaMode gamma_mode) {
  const bool jensen = gamma_mode == GammaMode::jensen;
  switch (method) {
    case Method::M1_joint_sic:
      return {{FactorId::eta1,
               jensen ? FactorId::gamma1_jensen : FactorId::gamma1_exact},
              {FactorId::eta2,
               jensen ? FactorId::gamma2_jensen : FactorId::gamma2_exact}};
    case Method::M2_joint_nosic:
      return {{jensen ? FactorId::gamma_bar1_jensen
                      : FactorId::gamma_bar1_exact},
              {jensen ? FactorId::gamma_bar2_jensen
                      : FactorId::gamma_bar2_exact}};
    case Method::M3_separate_sic:
      return {{FactorId::eta1, FactorId::breve11, FactorId::breve12},
              {FactorId::eta2, FactorId::breve21, FactorId::breve22}};
    case Method::M4_separate_nosic:
      return {{FactorId::breve11, FactorId::hat12},
              {FactorId::hat21, FactorId::breve22}};
  }
  throw InvalidArgument("unknown method");
}

double cache_product(std::span<const double> values) noexcept {
  double product = 1.0;
  for (double v : values) product *= v;
  return product;
}

StpReport compose_report(Method method, GammaMode gamma_mode,
                         std::span<const double> cache1_values,
                         std::span<const double> cache2_values) {
  const MethodFactors ids = method_factors(method, gamma_mode);
  if (ids.cache1.size() != cache1_values.size() ||
      ids.cache2.size() != cache2_values.size()) {
    throw InvalidArgument("factor count does not match method " +
                          std::string(to_string(method)));
  }
  StpReport report;
  report.method = method;
  report.cache1_success =
      clamp_probability(cache_product(cache1_values), "cache1_success");
  report.cache2_success =
      clamp_probability(cache_product(cache2_values), "cache2_success");
  report.stp = average_caches(report.cache1_success, report.cache2_success);
  for (std::size_t i = 0; i < ids.cache1.size(); ++i) {
    report.factors.emplace_back(ids.cache1[i], cache1_values[i]);
  }
  for (std::size_t i = 0; i < ids.cache2.size(); ++i) {
    report.factors.emplace_back(ids.cache2[i], cache2_values[i]);
  }
  return report;
}

namespace {

StpReport evaluate_product(Method method, GammaMode gamma_mode,
                           const ChannelParams& ch, PowerSplit alpha,
                           const RateConfig& rates) {
  check_inputs(ch, alpha);
  rates.validate();
  const MethodFactors ids = method_factors(method, gamma_mode);
  std::vector<double> c1;
  std::vector<double> c2;
  for (FactorId id : ids.cache1) c1.push_back(factor_value(id, ch, alpha, rates));
  for (FactorId id : ids.cache2) c2.push_back(factor_value(id, ch, alpha, rates));
  return compose_report(method, gamma_mode, c1, c2);
}

}  // namespace

StpReport stp_method1(const ChannelParams& ch, PowerSplit alpha,
                      const RateConfig& rates, GammaMode gamma_mode) {
  return evaluate_product(Method::M1_joint_sic, gamma_mode, ch, alpha, rates);
}

StpReport stp_method2(const ChannelParams& ch, PowerSplit alpha,
                      const RateConfig& rates, GammaMode gamma_mode) {
  return evaluate_product(Method::M2_joint_nosic, gamma_mode, ch, alpha,
                          rates);
}

StpReport stp_method3(const ChannelParams& ch, PowerSplit alpha,
                      const RateConfig& rates) {
  return evaluate_product(Method::M3_separate_sic, GammaMode::exact, ch, alpha,
                          rates);
}

StpReport stp_method4(const ChannelParams& ch, PowerSplit alpha,
                      const RateConfig& rates) {
  return evaluate_product(Method::M4_separate_nosic, GammaMode::exact, ch,
                          alpha, rates);
}

StpReport evaluate_stp(Method method, const ChannelParams& ch,
                       PowerSplit alpha, const RateConfig& rates,
                       GammaMode gamma_mode) {
  return evaluate_product(method, gamma_mode, ch, alpha, rates);
}

}  // namespace cachewave
