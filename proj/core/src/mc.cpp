#include "cachewave/mc.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "cachewave/errors.hpp"
#include "parallel.hpp"

namespace cachewave {

namespace {

// Substream 0 of stream 0 feeds physical draws; factor estimates use stream
// 1 + position of the factor in kAllFactors.
constexpr std::uint64_t kPhysicalStream = 0;

std::uint64_t factor_stream(FactorId id) {
  for (std::size_t i = 0; i < kAllFactors.size(); ++i) {
    if (kAllFactors[i] == id) return 1 + i;
  }
  return 1 + kAllFactors.size();
}

// Operating point with the per-trial constants hoisted.
struct Operating {
  double p;
  double a;  // alpha^2, X2 share
  double q;  // 1 - alpha^2, X~1 share
  RateConfig rates;
  double r2;
  double r_tilde2;

  Operating(const ChannelParams& ch, PowerSplit alpha, const RateConfig& r)
      : p(ch.power),
        a(alpha.x2_share()),
        q(alpha.x1_tilde_share()),
        rates(r),
        r2(r.r2()),
        r_tilde2(r.r_tilde2()) {}

  // Cache 1 events (l, h are cache-1 gains).
  bool mrc1(double l, double h) const {
    return std::log(1.0 + q * p * h / (1.0 + a * p * h) + p * l) >=
           rates.r_tilde1;
  }
  bool joint1(double l, double h) const {
    return std::log1p(p * l) + std::log1p(a * p * h) >= 2.0 * rates.r;
  }
  bool joint_noisy1(double l, double h) const {
    return std::log1p(p * l) + std::log1p(a * p * h / (1.0 + q * p * h)) >=
           2.0 * rates.r;
  }
  bool lt1(double l) const { return std::log1p(p * l) >= rates.r1; }
  bool ht_clean1(double h) const { return std::log1p(a * p * h) >= r2; }
  bool ht_noisy1(double h) const {
    return std::log1p(a * p * h / (1.0 + q * p * h)) >= r2;
  }

  // Cache 2 mirrors.
  bool mrc2(double l, double h) const {
    return std::log(1.0 + a * p * h / (1.0 + q * p * h) + p * l) >= r2;
  }
  bool joint2(double l, double h) const {
    return std::log1p(p * l) + std::log1p(q * p * h) >= 2.0 * rates.r_tilde;
  }
  bool joint_noisy2(double l, double h) const {
    return std::log1p(p * l) + std::log1p(q * p * h / (1.0 + a * p * h)) >=
           2.0 * rates.r_tilde;
  }
  bool lt2(double l) const { return std::log1p(p * l) >= r_tilde2; }
  bool ht_clean2(double h) const {
    return std::log1p(q * p * h) >= rates.r_tilde1;
  }
  bool ht_noisy2(double h) const {
    return std::log1p(q * p * h / (1.0 + a * p * h)) >= rates.r_tilde1;
  }

  // Arithmetic-mean SNR events behind the Jensen bounds.
  bool jensen1(double l, double h) const {
    return l + a * h >= 2.0 * std::expm1(rates.r) / p;
  }
  bool jensen2(double l, double h) const {
    return l + q * h >= 2.0 * std::expm1(rates.r_tilde) / p;
  }
  bool jensen_noisy1(double l, double h) const {
    return p * l + a * p * h / (1.0 + q * p * h) >= 2.0 * std::expm1(rates.r);
  }
  bool jensen_noisy2(double l, double h) const {
    return p * l + q * p * h / (1.0 + a * p * h) >=
           2.0 * std::expm1(rates.r_tilde);
  }

  CacheOutcome outcome(Method m, const GainDraw& d) const {
    const double l1 = d.g1_lt, h1 = d.g1_ht, l2 = d.g2_lt, h2 = d.g2_ht;
    switch (m) {
      case Method::M1_joint_sic:
        return {mrc1(l1, h1) && joint1(l1, h1), mrc2(l2, h2) && joint2(l2, h2)};
      case Method::M2_joint_nosic:
        return {joint_noisy1(l1, h1), joint_noisy2(l2, h2)};
      case Method::M3_separate_sic:
        return {mrc1(l1, h1) && lt1(l1) && ht_clean1(h1),
                mrc2(l2, h2) && ht_clean2(h2) && lt2(l2)};
      case Method::M4_separate_nosic:
        return {lt1(l1) && ht_noisy1(h1), ht_noisy2(h2) && lt2(l2)};
    }
    return {};
  }

  bool event(FactorId id, double l, double h) const {
    switch (id) {
      case FactorId::eta1: return mrc1(l, h);
      case FactorId::eta2: return mrc2(l, h);
      case FactorId::gamma1_jensen: return jensen1(l, h);
      case FactorId::gamma2_jensen: return jensen2(l, h);
      case FactorId::gamma1_exact: return joint1(l, h);
      case FactorId::gamma2_exact: return joint2(l, h);
      case FactorId::gamma_bar1_jensen: return jensen_noisy1(l, h);
      case FactorId::gamma_bar2_jensen: return jensen_noisy2(l, h);
      case FactorId::gamma_bar1_exact: return joint_noisy1(l, h);
      case FactorId::gamma_bar2_exact: return joint_noisy2(l, h);
      case FactorId::breve11: return lt1(l);
      case FactorId::breve12: return ht_clean1(h);
      case FactorId::breve21: return ht_clean2(h);
      case FactorId::breve22: return lt2(l);
      case FactorId::hat12: return ht_noisy1(h);
      case FactorId::hat21: return ht_noisy2(h);
    }
    return false;
  }
};

bool uses_lt(FactorId id) {
  switch (id) {
    case FactorId::breve12:
    case FactorId::breve21:
    case FactorId::hat12:
    case FactorId::hat21:
      return false;
    default:
      return true;
  }
}

bool uses_ht(FactorId id) {
  switch (id) {
    case FactorId::breve11:
    case FactorId::breve22:
      return false;
    default:
      return true;
  }
}

std::uint64_t batch_count(const McConfig& cfg) {
  return (cfg.n_trials + cfg.batch_size - 1) / cfg.batch_size;
}

std::uint64_t batch_trials(const McConfig& cfg, std::uint64_t batch) {
  const std::uint64_t start = batch * cfg.batch_size;
  return std::min(cfg.batch_size, cfg.n_trials - start);
}

McEstimate make_estimate(double mean, const McConfig& cfg) {
  McEstimate e;
  e.mean = mean;
  e.n_trials = cfg.n_trials;
  e.std_err = binomial_std_err(mean, cfg.n_trials);
  e.mode = cfg.mode;
  return e;
}

void check_point(const ChannelParams& ch, PowerSplit alpha,
                 const RateConfig& rates, const McConfig& cfg) {
  ch.validate();
  alpha.validate();
  rates.validate();
  cfg.validate();
}

}  // namespace

std::string_view to_string(McMode m) noexcept {
  return m == McMode::physical ? "physical" : "formula_faithful";
}

std::optional<McMode> parse_mc_mode(std::string_view text) noexcept {
  if (text == "physical") return McMode::physical;
  if (text == "formula_faithful") return McMode::formula_faithful;
  return std::nullopt;
}

void McConfig::validate() const {
  if (n_trials < 1) throw InvalidArgument("n_trials must be >= 1");
  if (batch_size < 1) throw InvalidArgument("batch_size must be >= 1");
}

double binomial_std_err(double p, std::uint64_t n) noexcept {
  if (n == 0) return 0.0;
  const double v = p * (1.0 - p);
  return v > 0.0 ? std::sqrt(v / static_cast<double>(n)) : 0.0;
}

int factor_cache(FactorId id) noexcept {
  switch (id) {
    case FactorId::eta1:
    case FactorId::gamma1_jensen:
    case FactorId::gamma1_exact:
    case FactorId::gamma_bar1_jensen:
    case FactorId::gamma_bar1_exact:
    case FactorId::breve11:
    case FactorId::breve12:
    case FactorId::hat12:
      return 1;
    default:
      return 2;
  }
}

CacheOutcome trial_success(Method method, const ChannelParams& ch,
                           const GainDraw& draw, PowerSplit alpha,
                           const RateConfig& rates) {
  return Operating(ch, alpha, rates).outcome(method, draw);
}

bool factor_event(FactorId id, const ChannelParams& ch, PowerSplit alpha,
                  const RateConfig& rates, double lt_gain, double ht_gain) {
  return Operating(ch, alpha, rates).event(id, lt_gain, ht_gain);
}

McEstimate estimate_factor(FactorId id, const ChannelParams& ch,
                           PowerSplit alpha, const RateConfig& rates,
                           const McConfig& cfg) {
  check_point(ch, alpha, rates, cfg);
  const Operating op(ch, alpha, rates);
  const double lambda = factor_cache(id) == 1 ? ch.lambda1 : ch.lambda2;
  const bool need_lt = uses_lt(id);
  const bool need_ht = uses_ht(id);
  const std::uint64_t stream = factor_stream(id);

  std::vector<std::uint64_t> hits(batch_count(cfg), 0);
  detail::parallel_for(hits.size(), cfg.threads, [&](std::size_t b) {
    RandomStream rng(cfg.seed, stream, b);
    std::uint64_t count = 0;
    const std::uint64_t n = batch_trials(cfg, b);
    for (std::uint64_t t = 0; t < n; ++t) {
      const double l = need_lt ? sample_gain(lambda, rng) : 0.0;
      const double h = need_ht ? sample_gain(lambda, rng) : 0.0;
      count += op.event(id, l, h) ? 1 : 0;
    }
    hits[b] = count;
  });
  std::uint64_t total = 0;
  for (std::uint64_t h : hits) total += h;
  return make_estimate(
      static_cast<double>(total) / static_cast<double>(cfg.n_trials), cfg);
}

McEstimate estimate_factor(std::string_view factor_name,
                           const ChannelParams& ch, PowerSplit alpha,
                           const RateConfig& rates, const McConfig& cfg) {
  return estimate_factor(parse_factor_id(factor_name), ch, alpha, rates, cfg);
}

McEstimate estimate_stp(const ChannelParams& ch, PowerSplit alpha,
                        const RateConfig& rates, Method method,
                        const McConfig& cfg) {
  check_point(ch, alpha, rates, cfg);

  if (cfg.mode == McMode::formula_faithful) {
    const MethodFactors ids = method_factors(method, GammaMode::exact);
    std::vector<double> c1;
    std::vector<double> c2;
    for (FactorId id : ids.cache1) {
      c1.push_back(estimate_factor(id, ch, alpha, rates, cfg).mean);
    }
    for (FactorId id : ids.cache2) {
      c2.push_back(estimate_factor(id, ch, alpha, rates, cfg).mean);
    }
    return make_estimate(average_caches(cache_product(c1), cache_product(c2)),
                         cfg);
  }

  const Operating op(ch, alpha, rates);
  std::vector<std::uint64_t> hits(batch_count(cfg), 0);
  detail::parallel_for(hits.size(), cfg.threads, [&](std::size_t b) {
    RandomStream rng(cfg.seed, kPhysicalStream, b);
    std::uint64_t count = 0;
    const std::uint64_t n = batch_trials(cfg, b);
    for (std::uint64_t t = 0; t < n; ++t) {
      const CacheOutcome o = op.outcome(method, sample_gains(ch, rng));
      count += (o.cache1_ok ? 1 : 0) + (o.cache2_ok ? 1 : 0);
    }
    hits[b] = count;
  });
  std::uint64_t total = 0;
  for (std::uint64_t h : hits) total += h;
  return make_estimate(
      static_cast<double>(total) / (2.0 * static_cast<double>(cfg.n_trials)),
      cfg);
}

}  // namespace cachewave
