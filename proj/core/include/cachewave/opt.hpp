#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "cachewave/channel.hpp"
#include "cachewave/mc.hpp"
#include "cachewave/stp.hpp"

namespace cachewave {

/// Box over (alpha, r1, r_tilde1). The sub-packet sums r1 + r2 = 2r and
/// r_tilde1 + r_tilde2 = 2 r_tilde hold by construction, so the box is the
/// whole feasible set. An axis with lo == hi is a single point.
struct SearchSpace {
  std::array<double, 2> alpha_range{0.0, 1.0};
  std::array<double, 2> r1_range{0.0, 0.0};
  std::array<double, 2> r_tilde1_range{0.0, 0.0};
  std::size_t grid_resolution = 101;
  /// Extra alpha values merged into the grid (e.g. uniform power sqrt(2)/2).
  std::vector<double> alpha_extra;

  /// alpha in [0,1], r1 in [0, 2r], r_tilde1 in [0, 2 r_tilde].
  static SearchSpace full(double r, double r_tilde,
                          std::size_t resolution = 101);

  /// Throws InvalidArgument on an inconsistent box.
  void validate(double r, double r_tilde) const;

  std::vector<double> alpha_points() const;
  std::vector<double> r1_points() const;
  std::vector<double> r_tilde1_points() const;
};

enum class ObjectiveKind { jensen, exact, mc };

std::string_view to_string(ObjectiveKind k) noexcept;
std::optional<ObjectiveKind> parse_objective(std::string_view text) noexcept;

struct Objective {
  ObjectiveKind kind = ObjectiveKind::jensen;
  /// Used by the mc objective; every candidate reuses the same seed.
  McConfig mc;
};

enum class Strategy { grid, genetic };
std::string_view to_string(Strategy s) noexcept;

struct OptResult {
  double best_alpha = 0.0;
  double best_r1 = 0.0;
  double best_r_tilde1 = 0.0;
  double best_stp = 0.0;
  std::size_t evaluations = 0;
  Strategy strategy = Strategy::grid;
};

/// Objective value at one point.
double evaluate_objective(Method method, const ChannelParams& ch,
                          PowerSplit alpha, const RateConfig& rates,
                          const Objective& objective);

/// Exhaustive search over the grid. Rate axes that no factor of `method`
/// depends on are collapsed to their lower end (Method 2). Ties go to the
/// smallest alpha, then r1, then r_tilde1. `threads` = 0 uses all cores; the
/// result does not depend on it. Evaluation failures are rethrown as
/// EvaluationFailure naming the grid point.
OptResult optimize_grid(const ChannelParams& ch, Method method, double r,
                        double r_tilde, const SearchSpace& space,
                        const Objective& objective = {}, unsigned threads = 0);

struct GaParams {
  std::size_t population = 64;
  std::size_t generations = 100;
  /// Per-gene probability of Gaussian mutation.
  double mutation_rate = 0.1;
  std::uint64_t seed = 0x6a5eedULL;
  std::size_t tournament_size = 2;
  /// BLX-alpha extension of the parents' interval.
  double blend = 0.5;
  /// Mutation standard deviation as a fraction of the axis width.
  double mutation_scale = 0.1;
  std::size_t elites = 2;

  void validate() const;
};

/// Real-coded GA: tournament selection, blend crossover, Gaussian mutation,
/// all clipped to the box, with elitism. Deterministic for a fixed seed.
OptResult optimize_genetic(const ChannelParams& ch, Method method, double r,
                           double r_tilde, const SearchSpace& space,
                           const Objective& objective = {},
                           const GaParams& ga = {});

}  // namespace cachewave
