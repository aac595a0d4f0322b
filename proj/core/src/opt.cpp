#include "cachewave/opt.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "cachewave/errors.hpp"
#include "parallel.hpp"

namespace cachewave {

namespace {

enum class RateAxis { none, r1, r_tilde1 };

RateAxis axis_of(FactorId id) {
  switch (id) {
    case FactorId::eta2:
    case FactorId::breve11:
    case FactorId::breve12:
    case FactorId::hat12:
      return RateAxis::r1;
    case FactorId::eta1:
    case FactorId::breve21:
    case FactorId::breve22:
    case FactorId::hat21:
      return RateAxis::r_tilde1;
    default:
      return RateAxis::none;
  }
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  if (lo == hi) return {lo};
  std::vector<double> pts(n);
  for (std::size_t i = 0; i < n; ++i) {
    pts[i] = i + 1 == n ? hi
                        : lo + (hi - lo) * static_cast<double>(i) /
                                   static_cast<double>(n - 1);
  }
  return pts;
}

void check_range(const std::array<double, 2>& range, double lo, double hi,
                 const char* name) {
  if (!(range[0] >= lo && range[1] <= hi && range[0] <= range[1])) {
    std::ostringstream msg;
    msg << name << " range [" << range[0] << ", " << range[1]
        << "] must lie inside [" << lo << ", " << hi << "]";
    throw InvalidArgument(msg.str());
  }
}

std::string describe_point(Method method, double alpha, double r1,
                           double r_tilde1) {
  std::ostringstream msg;
  msg << to_string(method) << " at alpha=" << alpha << " r1=" << r1
      << " r_tilde1=" << r_tilde1;
  return msg.str();
}

GammaMode gamma_mode_of(ObjectiveKind kind) {
  return kind == ObjectiveKind::exact ? GammaMode::exact : GammaMode::jensen;
}

struct Candidate {
  double stp = -1.0;
  std::size_t r1_index = 0;
  std::size_t r_tilde1_index = 0;
};

// One alpha slice of the analytic grid. Factor values are tabulated along the
// single rate axis each one depends on, then combined through the same
// cache_product/average_caches path as evaluate_stp.
Candidate analytic_slice(const ChannelParams& ch, Method method, double r,
                         double r_tilde, GammaMode mode, double alpha,
                         const std::vector<double>& r1s,
                         const std::vector<double>& rt1s) {
  const MethodFactors ids = method_factors(method, mode);
  const PowerSplit split{alpha};

  auto tabulate = [&](const std::vector<FactorId>& list) {
    std::vector<std::vector<double>> table;
    for (FactorId id : list) {
      const RateAxis axis = axis_of(id);
      const std::size_t n = axis == RateAxis::r1         ? r1s.size()
                            : axis == RateAxis::r_tilde1 ? rt1s.size()
                                                         : 1;
      std::vector<double> column(n);
      for (std::size_t i = 0; i < n; ++i) {
        const double r1 = axis == RateAxis::r1 ? r1s[i] : r1s.front();
        const double rt1 =
            axis == RateAxis::r_tilde1 ? rt1s[i] : rt1s.front();
        try {
          column[i] =
              factor_value(id, ch, split, RateConfig{r, r_tilde, r1, rt1});
        } catch (const Error& e) {
          throw EvaluationFailure(describe_point(method, alpha, r1, rt1) +
                                  ": " + e.what());
        }
      }
      table.push_back(std::move(column));
    }
    return table;
  };
  const auto t1 = tabulate(ids.cache1);
  const auto t2 = tabulate(ids.cache2);

  auto pick = [](const std::vector<FactorId>& list,
                 const std::vector<std::vector<double>>& table, std::size_t j,
                 std::size_t k, std::vector<double>& out) {
    for (std::size_t m = 0; m < list.size(); ++m) {
      const RateAxis axis = axis_of(list[m]);
      out[m] = table[m][axis == RateAxis::r1         ? j
                        : axis == RateAxis::r_tilde1 ? k
                                                     : 0];
    }
  };

  Candidate best;
  std::vector<double> v1(ids.cache1.size());
  std::vector<double> v2(ids.cache2.size());
  for (std::size_t j = 0; j < r1s.size(); ++j) {
    for (std::size_t k = 0; k < rt1s.size(); ++k) {
      pick(ids.cache1, t1, j, k, v1);
      pick(ids.cache2, t2, j, k, v2);
      const double stp = average_caches(
          clamp_probability(cache_product(v1), "cache1_success"),
          clamp_probability(cache_product(v2), "cache2_success"));
      if (stp > best.stp) best = {stp, j, k};
    }
  }
  return best;
}

struct Genome {
  std::array<double, 3> x{};
  double fitness = -1.0;
};

}  // namespace

SearchSpace SearchSpace::full(double r, double r_tilde,
                              std::size_t resolution) {
  SearchSpace s;
  s.r1_range = {0.0, 2.0 * r};
  s.r_tilde1_range = {0.0, 2.0 * r_tilde};
  s.grid_resolution = resolution;
  return s;
}

void SearchSpace::validate(double r, double r_tilde) const {
  if (grid_resolution < 2) {
    throw InvalidArgument("grid_resolution must be >= 2");
  }
  check_range(alpha_range, 0.0, 1.0, "alpha");
  check_range(r1_range, 0.0, 2.0 * r, "r1");
  check_range(r_tilde1_range, 0.0, 2.0 * r_tilde, "r_tilde1");
  for (double a : alpha_extra) {
    if (!(a >= 0.0 && a <= 1.0)) {
      throw InvalidArgument("extra alpha values must lie in [0, 1]");
    }
  }
}

std::vector<double> SearchSpace::alpha_points() const {
  std::vector<double> pts =
      linspace(alpha_range[0], alpha_range[1], grid_resolution);
  for (double a : alpha_extra) {
    if (a >= alpha_range[0] && a <= alpha_range[1]) pts.push_back(a);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

std::vector<double> SearchSpace::r1_points() const {
  return linspace(r1_range[0], r1_range[1], grid_resolution);
}

std::vector<double> SearchSpace::r_tilde1_points() const {
  return linspace(r_tilde1_range[0], r_tilde1_range[1], grid_resolution);
}

std::string_view to_string(ObjectiveKind k) noexcept {
  switch (k) {
    case ObjectiveKind::jensen: return "jensen";
    case ObjectiveKind::exact: return "exact";
    case ObjectiveKind::mc: return "mc";
  }
  return "unknown";
}

std::optional<ObjectiveKind> parse_objective(std::string_view text) noexcept {
  if (text == "jensen") return ObjectiveKind::jensen;
  if (text == "exact") return ObjectiveKind::exact;
  if (text == "mc") return ObjectiveKind::mc;
  return std::nullopt;
}

std::string_view to_string(Strategy s) noexcept {
  return s == Strategy::grid ? "grid" : "genetic";
}

double evaluate_objective(Method method, const ChannelParams& ch,
                          PowerSplit alpha, const RateConfig& rates,
                          const Objective& objective) {
  if (objective.kind == ObjectiveKind::mc) {
    return estimate_stp(ch, alpha, rates, method, objective.mc).mean;
  }
  return evaluate_stp(method, ch, alpha, rates, gamma_mode_of(objective.kind))
      .stp;
}

OptResult optimize_grid(const ChannelParams& ch, Method method, double r,
                        double r_tilde, const SearchSpace& space,
                        const Objective& objective, unsigned threads) {
  ch.validate();
  space.validate(r, r_tilde);
  const std::vector<double> alphas = space.alpha_points();
  std::vector<double> r1s = space.r1_points();
  std::vector<double> rt1s = space.r_tilde1_points();

  const GammaMode mode = gamma_mode_of(objective.kind);
  const MethodFactors ids = method_factors(method, mode);
  auto depends_on = [&](RateAxis axis) {
    auto hit = [&](FactorId id) { return axis_of(id) == axis; };
    return std::any_of(ids.cache1.begin(), ids.cache1.end(), hit) ||
           std::any_of(ids.cache2.begin(), ids.cache2.end(), hit);
  };
  if (!depends_on(RateAxis::r1)) r1s.resize(1);
  if (!depends_on(RateAxis::r_tilde1)) rt1s.resize(1);

  std::vector<Candidate> slices(alphas.size());
  if (objective.kind == ObjectiveKind::mc) {
    for (std::size_t i = 0; i < alphas.size(); ++i) {
      Candidate best;
      for (std::size_t j = 0; j < r1s.size(); ++j) {
        for (std::size_t k = 0; k < rt1s.size(); ++k) {
          double v = 0.0;
          try {
            v = evaluate_objective(method, ch, PowerSplit{alphas[i]},
                                   RateConfig{r, r_tilde, r1s[j], rt1s[k]},
                                   objective);
          } catch (const Error& e) {
            throw EvaluationFailure(
                describe_point(method, alphas[i], r1s[j], rt1s[k]) + ": " +
                e.what());
          }
          if (v > best.stp) best = {v, j, k};
        }
      }
      slices[i] = best;
    }
  } else {
    detail::parallel_for(alphas.size(), threads, [&](std::size_t i) {
      slices[i] =
          analytic_slice(ch, method, r, r_tilde, mode, alphas[i], r1s, rt1s);
    });
  }

  OptResult out;
  out.strategy = Strategy::grid;
  out.evaluations = alphas.size() * r1s.size() * rt1s.size();
  double best = -1.0;
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    if (slices[i].stp > best) {
      best = slices[i].stp;
      out.best_alpha = alphas[i];
      out.best_r1 = r1s[slices[i].r1_index];
      out.best_r_tilde1 = rt1s[slices[i].r_tilde1_index];
    }
  }
  out.best_stp = best;
  return out;
}

void GaParams::validate() const {
  if (population < 4) throw InvalidArgument("GA population must be >= 4");
  if (generations < 1) throw InvalidArgument("GA generations must be >= 1");
  if (!(mutation_rate >= 0.0 && mutation_rate <= 1.0)) {
    throw InvalidArgument("GA mutation_rate must lie in [0, 1]");
  }
  if (tournament_size < 1) {
    throw InvalidArgument("GA tournament_size must be >= 1");
  }
  if (elites >= population) {
    throw InvalidArgument("GA elites must be smaller than the population");
  }
}

OptResult optimize_genetic(const ChannelParams& ch, Method method, double r,
                           double r_tilde, const SearchSpace& space,
                           const Objective& objective, const GaParams& ga) {
  ch.validate();
  space.validate(r, r_tilde);
  ga.validate();

  std::array<double, 3> lo{space.alpha_range[0], space.r1_range[0],
                           space.r_tilde1_range[0]};
  std::array<double, 3> hi{space.alpha_range[1], space.r1_range[1],
                           space.r_tilde1_range[1]};
  // Same axis collapse as the grid: rates that no factor reads stay at lo.
  {
    const MethodFactors ids =
        method_factors(method, gamma_mode_of(objective.kind));
    bool r1_used = false;
    bool rt1_used = false;
    for (const auto* list : {&ids.cache1, &ids.cache2}) {
      for (FactorId id : *list) {
        r1_used |= axis_of(id) == RateAxis::r1;
        rt1_used |= axis_of(id) == RateAxis::r_tilde1;
      }
    }
    if (!r1_used) hi[1] = lo[1];
    if (!rt1_used) hi[2] = lo[2];
  }

  RandomStream rng(ga.seed, 0x6a, 0);
  OptResult out;
  out.strategy = Strategy::genetic;
  double best = -1.0;

  auto evaluate = [&](Genome& g) {
    const double alpha = std::clamp(g.x[0], lo[0], hi[0]);
    const RateConfig rates{r, r_tilde, std::clamp(g.x[1], lo[1], hi[1]),
                           std::clamp(g.x[2], lo[2], hi[2])};
    try {
      g.fitness =
          evaluate_objective(method, ch, PowerSplit{alpha}, rates, objective);
    } catch (const Error& e) {
      throw EvaluationFailure(
          describe_point(method, alpha, rates.r1, rates.r_tilde1) + ": " +
          e.what());
    }
    ++out.evaluations;
    if (g.fitness > best) {
      best = g.fitness;
      out.best_alpha = alpha;
      out.best_r1 = rates.r1;
      out.best_r_tilde1 = rates.r_tilde1;
    }
  };
  auto clip = [&](std::size_t d, double v) {
    return std::clamp(v, lo[d], hi[d]);
  };

  std::vector<Genome> pop(ga.population);
  for (Genome& g : pop) {
    for (std::size_t d = 0; d < 3; ++d) {
      g.x[d] = lo[d] + (hi[d] - lo[d]) * rng.uniform();
    }
    evaluate(g);
  }

  auto tournament = [&]() -> const Genome& {
    std::size_t winner = rng.next_u64() % pop.size();
    for (std::size_t t = 1; t < ga.tournament_size; ++t) {
      const std::size_t c = rng.next_u64() % pop.size();
      if (pop[c].fitness > pop[winner].fitness) winner = c;
    }
    return pop[winner];
  };

  for (std::size_t gen = 0; gen < ga.generations; ++gen) {
    std::vector<std::size_t> order(pop.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) {
                       return pop[a].fitness > pop[b].fitness;
                     });
    std::vector<Genome> next;
    next.reserve(pop.size());
    for (std::size_t e = 0; e < ga.elites; ++e) next.push_back(pop[order[e]]);

    while (next.size() < pop.size()) {
      const Genome& p1 = tournament();
      const Genome& p2 = tournament();
      Genome child;
      for (std::size_t d = 0; d < 3; ++d) {
        const double a = std::min(p1.x[d], p2.x[d]);
        const double b = std::max(p1.x[d], p2.x[d]);
        const double ext = ga.blend * (b - a);
        double v = (a - ext) + (b - a + 2.0 * ext) * rng.uniform();
        if (rng.uniform() < ga.mutation_rate) {
          v += ga.mutation_scale * (hi[d] - lo[d]) * rng.normal();
        }
        child.x[d] = clip(d, v);
      }
      evaluate(child);
      next.push_back(child);
    }
    pop = std::move(next);
  }

  out.best_stp = best;
  return out;
}

}  // namespace cachewave
