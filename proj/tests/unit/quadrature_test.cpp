#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "cachewave/errors.hpp"
#include "cachewave/quadrature.hpp"
#include "cachewave/random.hpp"

namespace cachewave {
namespace {

constexpr double kTol = 1e-9;

TEST(Integrate, ClosedFormIntegrals) {
  EXPECT_NEAR(integrate([](double x) { return x; }, 0.0, 1.0, kTol).value,
              0.5, 1e-12);
  EXPECT_NEAR(
      integrate([](double x) { return std::sin(x); }, 0.0, std::numbers::pi,
                kTol)
          .value,
      2.0, 2e-9);
  EXPECT_NEAR(
      integrate([](double x) { return std::exp(-x); }, 0.0, 10.0, kTol).value,
      1.0 - std::exp(-10.0), 1e-9);
}

TEST(Integrate, EmptyIntervalIsExactlyZero) {
  int calls = 0;
  auto f = [&](double) {
    ++calls;
    return 1.0;
  };
  const IntegralResult same = integrate(f, 2.0, 2.0, kTol);
  EXPECT_EQ(same.value, 0.0);
  EXPECT_EQ(same.evaluations, 0u);
  const IntegralResult reversed = integrate(f, 3.0, 2.0, kTol);
  EXPECT_EQ(reversed.value, 0.0);
  EXPECT_EQ(calls, 0);
}

TEST(Integrate, NeverTouchesEndpoints) {
  auto f = [](double x) {
    if (x <= 0.0 || x >= 1.0) ADD_FAILURE() << "evaluated at endpoint " << x;
    return 1.0 / std::sqrt(x);
  };
  // Integrable singularity at 0: exact value 2.
  const IntegralResult r = integrate(f, 0.0, 1.0, 1e-8);
  EXPECT_NEAR(r.value, 2.0, 1e-7);
  EXPECT_GE(r.error_estimate, 0.0);
}

TEST(Integrate, NonConvergenceIsReported) {
  QuadratureOptions opts;
  opts.rel_tol = 1e-9;
  opts.max_depth = 3;
  EXPECT_THROW(integrate([](double x) { return std::sin(1.0 / x); }, 0.0, 1.0,
                         opts),
               QuadratureFailure);
}

TEST(Integrate, NonFiniteIntegrandIsReported) {
  EXPECT_THROW(integrate([](double) { return NAN; }, 0.0, 1.0, kTol),
               QuadratureFailure);
}

TEST(Integrate, RejectsBadTolerance) {
  auto f = [](double x) { return x; };
  EXPECT_THROW(integrate(f, 0.0, 1.0, 0.0), InvalidArgument);
  EXPECT_THROW(integrate(f, 0.0, 1.0, 0.5), InvalidArgument);
}

// Random polynomials of degree 1..6 with coefficients in [-1, 1].
struct Poly {
  std::vector<double> c;
  double operator()(double x) const {
    double v = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * x + *it;
    return v;
  }
};

Poly random_poly(RandomStream& rng) {
  Poly p;
  const int degree = 1 + static_cast<int>(rng.next_u64() % 6);
  for (int i = 0; i <= degree; ++i) p.c.push_back(2.0 * rng.uniform() - 1.0);
  return p;
}

TEST(IntegrateProperty, Linearity) {
  RandomStream rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const Poly p = random_poly(rng);
    const double scale = 10.0 * rng.uniform() - 5.0;
    const double a = -2.0 + rng.uniform();
    const double b = a + 0.1 + 3.0 * rng.uniform();
    const double base = integrate(p, a, b, kTol).value;
    const double scaled =
        integrate([&](double x) { return scale * p(x); }, a, b, kTol).value;
    EXPECT_NEAR(scaled, scale * base,
                2.0 * kTol * std::abs(scale * base) + 2e-12);
  }
}

TEST(IntegrateProperty, IntervalAdditivity) {
  RandomStream rng(19);
  for (int trial = 0; trial < 200; ++trial) {
    const Poly p = random_poly(rng);
    const double a = -2.0 + rng.uniform();
    const double b = a + 0.1 + 3.0 * rng.uniform();
    const double c = a + (b - a) * rng.uniform();
    const double whole = integrate(p, a, b, kTol).value;
    const double split =
        integrate(p, a, c, kTol).value + integrate(p, c, b, kTol).value;
    EXPECT_NEAR(whole, split, 2.0 * kTol * std::abs(whole) + 2e-12);
  }
}

}  // namespace
}  // namespace cachewave
