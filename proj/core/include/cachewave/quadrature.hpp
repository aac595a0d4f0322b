#pragma once

#include <cstddef>
#include <functional>

namespace cachewave {

struct IntegralResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
};

struct QuadratureOptions {
  double rel_tol = 1e-9;
  double abs_floor = 1e-12;
  /// Bisection depth at which a panel is declared pathological.
  int max_depth = 60;
  /// Hard cap on the number of live panels.
  std::size_t max_panels = 20000;
};

/// Globally adaptive Gauss-Kronrod (7/15) integration of f over [a, b].
///
/// Nodes are strictly interior to every panel, so f is never evaluated at a
/// or b and integrable endpoint singularities are tolerated. Subdivision stops
/// once the summed error estimate is at most max(rel_tol * |value|, abs_floor).
/// An empty or reversed interval (a >= b) yields exactly zero with no
/// evaluations. Throws QuadratureFailure when a panel would exceed max_depth,
/// the panel budget is exhausted, or f returns a non-finite value; throws
/// InvalidArgument when rel_tol is outside (0, 0.1].
IntegralResult integrate(const std::function<double(double)>& f, double a,
                         double b, const QuadratureOptions& options = {});

inline IntegralResult integrate(const std::function<double(double)>& f,
                                double a, double b, double rel_tol) {
  QuadratureOptions options;
  options.rel_tol = rel_tol;
  return integrate(f, a, b, options);
}

}  // namespace cachewave
