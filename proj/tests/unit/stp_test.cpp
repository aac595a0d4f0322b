#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "cachewave/errors.hpp"
#include "cachewave/stp.hpp"
#include "param_gen.hpp"

namespace cachewave {
namespace {

using testing::OperatingPoint;
using testing::PointGenerator;

const double kHalfSqrt2 = std::numbers::sqrt2 / 2.0;

// Reference values from tests/oracles/factor_oracle.py, which conditions on
// the HT gain and integrates with mpmath at 30 digits.
struct OracleRow {
  double lambda, power, alpha, rate;
  double eta_x1_tilde_wanted;  // eta1 at r_tilde1 = rate
  double eta_x2_wanted;        // eta2 at r2 = rate
  double gamma_jensen;         // gamma1_jensen at r = rate
  double gamma_exact;
  double gamma_bar_jensen;
  double gamma_bar_exact;
};

const OracleRow kOracle[] = {
    {1.0, 10.0, 0.70710678118654752, 1.0, 0.9035334907325312, 0.9035334907325312, 0.91541941306324389, 0.88853682687961941, 0.76088710368328587, 0.71083177805833224},
    {0.10000000000000001, 10.0, 0.70710678118654752, 1.0, 0.99216424327987271, 0.99216424327987271, 0.99885878697213312, 0.99839243139580469, 0.97526169793169074, 0.97195407893863818},
    {1.0, 10.0, 0.59999999999999998, 0.80000000000000004, 0.98042594307734236, 0.92226946949027806, 0.93811533349056493, 0.9220812047096927, 0.81589311043043099, 0.77700700311940783},
    {0.5, 3.0, 0.29999999999999999, 0.40000000000000002, 0.99639953986545435, 0.93222875298753044, 0.91673870387459086, 0.90713132925867579, 0.85886130225332038, 0.83536924380324925},
    {2.0, 50.0, 0.90000000000000002, 1.7, 0.84300605211646617, 0.94174788620910223, 0.93914608624321108, 0.90345540909990362, 0.78743411709279413, 0.75080853971719343},
    {1.0, 1.0, 0.5, 0.20000000000000001, 0.97115373823810713, 0.90100207578280069, 0.79960114549492052, 0.78952505164651017, 0.72320172070367151, 0.71323556674846282},
};

TEST(Factors, MatchIndependentQuadratureOracle) {
  constexpr double kTol = 1e-8;
  for (const OracleRow& row : kOracle) {
    // Cache-1 factors read lambda1; eta2 reads lambda2.
    const ChannelParams ch{row.lambda, row.lambda, row.power};
    const PowerSplit a{row.alpha};
    SCOPED_TRACE(::testing::Message() << "lambda=" << row.lambda << " P="
                                      << row.power << " alpha=" << row.alpha
                                      << " rate=" << row.rate);
    EXPECT_NEAR(eta1(ch, a, row.rate), row.eta_x1_tilde_wanted, kTol);
    EXPECT_NEAR(eta2(ch, a, row.rate), row.eta_x2_wanted, kTol);
    EXPECT_NEAR(gamma1_jensen(ch, a, row.rate), row.gamma_jensen, kTol);
    EXPECT_NEAR(gamma1_exact(ch, a, row.rate), row.gamma_exact, kTol);
    EXPECT_NEAR(gamma_bar1_jensen(ch, a, row.rate), row.gamma_bar_jensen,
                kTol);
    EXPECT_NEAR(gamma_bar1_exact(ch, a, row.rate), row.gamma_bar_exact, kTol);
  }
}

TEST(Factors, ZeroRateIsCertainSuccess) {
  const ChannelParams ch{1.0, 0.1, 10.0};
  for (double alpha : {0.0, 0.3, kHalfSqrt2, 1.0}) {
    const PowerSplit a{alpha};
    EXPECT_EQ(eta1(ch, a, 0.0), 1.0);
    EXPECT_EQ(eta2(ch, a, 0.0), 1.0);
    EXPECT_EQ(gamma1_jensen(ch, a, 0.0), 1.0);
    EXPECT_EQ(gamma2_jensen(ch, a, 0.0), 1.0);
    EXPECT_EQ(gamma1_exact(ch, a, 0.0), 1.0);
    EXPECT_EQ(gamma2_exact(ch, a, 0.0), 1.0);
    EXPECT_EQ(gamma_bar1_jensen(ch, a, 0.0), 1.0);
    EXPECT_EQ(gamma_bar2_jensen(ch, a, 0.0), 1.0);
    EXPECT_EQ(gamma_bar1_exact(ch, a, 0.0), 1.0);
    EXPECT_EQ(gamma_bar2_exact(ch, a, 0.0), 1.0);
  }
}

TEST(Factors, Eta1ApproachesOneAtHighPower) {
  EXPECT_GE(eta1(ChannelParams{1.0, 0.1, 1e6}, PowerSplit{0.5}, 1.0), 0.9999);
}

TEST(Factors, Eta2IsEta1UnderCacheSwap) {
  PointGenerator gen(101);
  for (int i = 0; i < 200; ++i) {
    const OperatingPoint p = gen.next();
    const double a = p.alpha.alpha;
    const double r2 = p.rates.r2();
    const double lhs = eta2(p.ch, p.alpha, r2);
    const ChannelParams swapped{p.ch.lambda2, p.ch.lambda1, p.ch.power};
    const double rhs = eta1(swapped, PowerSplit{std::sqrt(1.0 - a * a)}, r2);
    EXPECT_NEAR(lhs, rhs, 1e-9);
  }
}

TEST(Factors, JensenFormMatchesPrintedExpression) {
  // Two-term expression with theta = e^R - 1, valid for 0 < alpha < 1.
  const double lambda = 1.0, p = 10.0, r = 1.0;
  for (double alpha : {0.2, 0.5, kHalfSqrt2, 0.95}) {
    const double a2 = alpha * alpha;
    const double theta = std::expm1(r);
    const double printed =
        std::exp(-2.0 * lambda * theta / p) +
        a2 * std::exp(-2.0 * lambda * theta / (p * a2)) / (a2 - 1.0) *
            (1.0 - std::exp(-2.0 * lambda * (a2 - 1.0) * theta / (p * a2)));
    EXPECT_NEAR(gamma1_jensen(ChannelParams{lambda, 0.1, p}, PowerSplit{alpha},
                              r),
                printed, 1e-12);
    // Mirror for cache 2 with 1 - alpha^2.
    const double l2 = 0.1;
    const double printed2 =
        std::exp(-2.0 * l2 * theta / p) +
        (a2 - 1.0) * std::exp(-2.0 * l2 * theta / (p * (1.0 - a2))) / a2 *
            (1.0 - std::exp(-2.0 * l2 * a2 * theta / (p * (a2 - 1.0))));
    EXPECT_NEAR(gamma2_jensen(ChannelParams{1.0, l2, p}, PowerSplit{alpha}, r),
                printed2, 1e-12);
  }
}

TEST(Factors, JensenBoundaryLimitsAreContinuous) {
  const ChannelParams ch{1.0, 0.1, 10.0};
  EXPECT_NEAR(gamma1_jensen(ch, PowerSplit{1.0}, 1.0),
              gamma1_jensen(ch, PowerSplit{1.0 - 1e-7}, 1.0), 1e-6);
  EXPECT_NEAR(gamma1_jensen(ch, PowerSplit{0.0}, 1.0),
              gamma1_jensen(ch, PowerSplit{1e-4}, 1.0), 1e-6);
  // alpha = 1: Erlang-2 tail e^{-x}(1 + x).
  const double x = 2.0 * std::expm1(1.0) / 10.0;
  EXPECT_NEAR(gamma1_jensen(ch, PowerSplit{1.0}, 1.0),
              std::exp(-x) * (1.0 + x), 1e-15);
}

TEST(Factors, GammaExactWithoutHtPowerIsLtOnly) {
  const ChannelParams ch{1.0, 0.1, 10.0};
  EXPECT_DOUBLE_EQ(gamma1_exact(ch, PowerSplit{0.0}, 1.0),
                   std::exp(-std::expm1(2.0) / 10.0));
  EXPECT_DOUBLE_EQ(gamma2_exact(ch, PowerSplit{1.0}, 1.0),
                   std::exp(-0.1 * std::expm1(2.0) / 10.0));
}

TEST(Factors, GammaBarAtFullSplitEqualsGammaExact) {
  const ChannelParams ch{1.0, 0.1, 10.0};
  EXPECT_NEAR(gamma_bar1_exact(ch, PowerSplit{1.0}, 1.0),
              gamma1_exact(ch, PowerSplit{1.0}, 1.0), 1e-9);
  EXPECT_NEAR(gamma_bar2_exact(ch, PowerSplit{0.0}, 1.0),
              gamma2_exact(ch, PowerSplit{0.0}, 1.0), 1e-9);
}

TEST(Factors, BreveClosedForms) {
  const ChannelParams unit{1.0, 0.1, 1.0};
  EXPECT_NEAR(
      breve_gammas(unit, PowerSplit{0.5},
                   RateConfig{std::log(2.0) / 2, 0.0, std::log(2.0), 0.0})
          .g11,
      std::exp(-1.0), 1e-15);

  const BreveGammas zero =
      breve_gammas(ChannelParams{1.0, 0.1, 10.0}, PowerSplit{0.4}, {});
  EXPECT_EQ(zero.g11, 1.0);
  EXPECT_EQ(zero.g12, 1.0);
  EXPECT_EQ(zero.g21, 1.0);
  EXPECT_EQ(zero.g22, 1.0);

  // (1 - alpha^2) P = 5, so the exponent is 0.1 (e - 1) / 5.
  const BreveGammas g = breve_gammas(ChannelParams{1.0, 0.1, 10.0},
                                     PowerSplit{kHalfSqrt2},
                                     RateConfig{1.0, 1.0, 1.0, 1.0});
  EXPECT_NEAR(g.g21, 0.96622, 5e-6);
  EXPECT_NEAR(g.g21, std::exp(-0.1 * (std::numbers::e - 1.0) / 5.0), 1e-15);
}

TEST(Factors, BreveBoundarySplits) {
  const ChannelParams ch{1.0, 0.1, 10.0};
  const RateConfig rates{1.0, 1.0, 1.0, 1.0};
  EXPECT_EQ(breve_gammas(ch, PowerSplit{0.0}, rates).g12, 0.0);
  EXPECT_EQ(breve_gammas(ch, PowerSplit{1.0}, rates).g21, 0.0);
  const RateConfig no_ht{1.0, 1.0, 2.0, 0.0};
  EXPECT_EQ(breve_gammas(ch, PowerSplit{0.0}, no_ht).g12, 1.0);
  EXPECT_EQ(breve_gammas(ch, PowerSplit{1.0}, no_ht).g21, 1.0);
}

TEST(Factors, HatFeasibilityBoundary) {
  const ChannelParams ch{1.0, 0.1, 10.0};
  // r2 = ln 2 = -log(1 - alpha^2) at alpha^2 = 1/2.
  const double ln2 = std::log(2.0);
  const RateConfig at_ceiling{ln2 / 2.0, 1.0, 0.0, 1.0};
  EXPECT_EQ(hat_gammas(ch, PowerSplit{kHalfSqrt2}, at_ceiling).g12, 0.0);
  const RateConfig zero_r2{0.5, 1.0, 1.0, 1.0};
  EXPECT_EQ(hat_gammas(ch, PowerSplit{kHalfSqrt2}, zero_r2).g12, 1.0);
  // Mirror: r_tilde1 >= -2 log(alpha).
  const RateConfig rt_ceiling{1.0, ln2, 1.0, ln2};
  EXPECT_EQ(hat_gammas(ch, PowerSplit{kHalfSqrt2}, rt_ceiling).g21, 0.0);
}

TEST(Factors, HatGenericBranch) {
  const ChannelParams ch{1.0, 0.1, 10.0};
  const RateConfig rates{0.25, 1.0, 0.0, 1.0};  // r2 = 0.5
  ASSERT_GT(-std::log(1.0 - 0.81), 0.5);
  const double theta = std::expm1(0.5);
  EXPECT_NEAR(hat_gammas(ch, PowerSplit{0.9}, rates).g12,
              std::exp(-theta / (0.81 * 10.0 - 0.19 * 10.0 * theta)), 1e-12);
}

TEST(Factors, HatBoundarySplits) {
  const ChannelParams ch{1.0, 0.1, 10.0};
  const RateConfig rates{1.0, 1.0, 1.0, 1.0};
  const HatGammas full = hat_gammas(ch, PowerSplit{1.0}, rates);
  EXPECT_EQ(full.g21, 0.0);
  EXPECT_EQ(full.g12, breve_gammas(ch, PowerSplit{1.0}, rates).g12);
  const HatGammas none = hat_gammas(ch, PowerSplit{0.0}, rates);
  EXPECT_EQ(none.g12, 0.0);
  EXPECT_EQ(none.g21, breve_gammas(ch, PowerSplit{0.0}, rates).g21);
}

TEST(Methods, ZeroRatesGiveCertainSuccess) {
  const ChannelParams ch{1.0, 0.1, 10.0};
  for (double alpha : {0.0, 0.5, 1.0}) {
    for (Method m : kAllMethods) {
      EXPECT_EQ(evaluate_stp(m, ch, PowerSplit{alpha}, {}).stp, 1.0)
          << to_string(m) << " alpha=" << alpha;
    }
  }
}

TEST(Methods, ReportAveragesCachesAndListsFactors) {
  const ChannelParams ch{1.0, 0.1, 10.0};
  const RateConfig rates{1.0, 1.0, 0.8, 1.3};
  const StpReport r1 = stp_method1(ch, PowerSplit{0.6}, rates);
  EXPECT_EQ(r1.stp, (r1.cache1_success + r1.cache2_success) / 2.0);
  ASSERT_EQ(r1.factors.size(), 4u);
  EXPECT_EQ(r1.cache1_success,
            *r1.factor(FactorId::eta1) * *r1.factor(FactorId::gamma1_jensen));
  EXPECT_EQ(*r1.factor(FactorId::eta1), eta1(ch, PowerSplit{0.6}, 1.3));
  EXPECT_FALSE(r1.factor(FactorId::hat12).has_value());

  const StpReport r3 = stp_method3(ch, PowerSplit{0.6}, rates);
  EXPECT_EQ(r3.factors.size(), 6u);
  const StpReport r4 = stp_method4(ch, PowerSplit{0.6}, rates);
  EXPECT_EQ(r4.factors.size(), 4u);
  const HatGammas hat = hat_gammas(ch, PowerSplit{0.6}, rates);
  const BreveGammas breve = breve_gammas(ch, PowerSplit{0.6}, rates);
  EXPECT_EQ(r4.cache1_success, breve.g11 * hat.g12);
  EXPECT_EQ(r4.cache2_success, hat.g21 * breve.g22);
}

TEST(Methods, Method2IgnoresRateSplitBitwise) {
  const ChannelParams ch{1.0, 0.1, 10.0};
  PointGenerator gen(7);
  for (GammaMode mode : {GammaMode::jensen, GammaMode::exact}) {
    const double base =
        stp_method2(ch, PowerSplit{0.7}, RateConfig{1.0, 1.2, 0.0, 0.0}, mode)
            .stp;
    for (int i = 0; i < 50; ++i) {
      const RateConfig rates{1.0, 1.2, gen.between(0.0, 2.0),
                             gen.between(0.0, 2.4)};
      EXPECT_EQ(stp_method2(ch, PowerSplit{0.7}, rates, mode).stp, base);
    }
  }
}

TEST(Methods, RejectsInvalidInputs) {
  const ChannelParams ch{1.0, 0.1, 10.0};
  EXPECT_THROW(stp_method1(ch, PowerSplit{1.5}, {}), InvalidArgument);
  EXPECT_THROW(stp_method1(ch, PowerSplit{-0.1}, {}), InvalidArgument);
  EXPECT_THROW(stp_method3(ch, PowerSplit{0.5}, RateConfig{1.0, 1.0, 2.5, 1.0}),
               InvalidArgument);
  EXPECT_THROW(stp_method4(ch, PowerSplit{0.5}, RateConfig{-1.0, 1.0, 0, 0}),
               InvalidArgument);
  EXPECT_THROW(stp_method2(ChannelParams{1.0, 0.1, -1.0}, PowerSplit{0.5}, {}),
               InvalidArgument);
}

TEST(Methods, ComposeReportChecksArity) {
  const std::vector<double> one{0.5};
  EXPECT_THROW(compose_report(Method::M1_joint_sic, GammaMode::jensen, one, one),
               InvalidArgument);
}

TEST(Methods, ClampProbabilityGuardsRange) {
  EXPECT_EQ(clamp_probability(1.0 + 5e-10, "p"), 1.0);
  EXPECT_EQ(clamp_probability(-5e-10, "p"), 0.0);
  EXPECT_THROW(clamp_probability(1.0 + 1e-6, "p"), ProbabilityRangeError);
  EXPECT_THROW(clamp_probability(NAN, "p"), ProbabilityRangeError);
}

TEST(Names, RoundTripAndRejection) {
  for (Method m : kAllMethods) {
    EXPECT_EQ(parse_method(to_string(m)), m);
    EXPECT_EQ(parse_method(short_name(m)), m);
  }
  EXPECT_FALSE(parse_method("M5").has_value());
  for (FactorId f : kAllFactors) EXPECT_EQ(parse_factor_id(to_string(f)), f);
  EXPECT_THROW(parse_factor_id("gamma3"), UnknownFactor);
  EXPECT_EQ(parse_gamma_mode("exact"), GammaMode::exact);
  EXPECT_FALSE(parse_gamma_mode("bound").has_value());
}
// Factors whose rate argument is a single sub-rate, with a setter for it.
double with_rate(FactorId id, const OperatingPoint& p, double rate) {
  RateConfig r = p.rates;
  switch (id) {
    case FactorId::eta1:
    case FactorId::breve21:
    case FactorId::breve22:
    case FactorId::hat21:
      // r_tilde1 axis; widen r_tilde so the split stays feasible.
      r.r_tilde = std::max(r.r_tilde, rate);
      r.r_tilde1 = rate;
      if (id == FactorId::breve22) r.r_tilde1 = 2.0 * r.r_tilde - rate;
      break;
    case FactorId::eta2:
    case FactorId::breve11:
    case FactorId::breve12:
    case FactorId::hat12:
      r.r = std::max(r.r, rate);
      r.r1 = 2.0 * r.r - rate;  // r2 = rate
      if (id == FactorId::breve11) r.r1 = rate;
      break;
    default:
      r.r = rate;
      r.r_tilde = rate;
      r.r1 = std::min(r.r1, 2.0 * rate);
      r.r_tilde1 = std::min(r.r_tilde1, 2.0 * rate);
      break;
  }
  return factor_value(id, p.ch, p.alpha, r);
}

TEST(FactorProperties, AreProbabilities) {
  PointGenerator gen(1);
  for (int i = 0; i < 1000; ++i) {
    const OperatingPoint p = gen.next();
    for (FactorId id : kAllFactors) {
      const double v = factor_value(id, p.ch, p.alpha, p.rates);
      ASSERT_GE(v, 0.0) << to_string(id);
      ASSERT_LE(v, 1.0) << to_string(id);
    }
    for (Method m : kAllMethods) {
      const double v = evaluate_stp(m, p.ch, p.alpha, p.rates).stp;
      ASSERT_TRUE(v >= 0.0 && v <= 1.0) << to_string(m);
    }
  }
}

TEST(FactorProperties, NondecreasingInPower) {
  PointGenerator gen(2);
  for (int i = 0; i < 300; ++i) {
    const OperatingPoint p = gen.next();
    OperatingPoint q = p;
    q.ch.power *= 1.0 + gen.between(0.01, 2.0);
    for (FactorId id : kAllFactors) {
      EXPECT_GE(factor_value(id, q.ch, q.alpha, q.rates) + 1e-9,
                factor_value(id, p.ch, p.alpha, p.rates))
          << to_string(id) << " at P=" << p.ch.power;
    }
  }
}

TEST(FactorProperties, NonincreasingInRate) {
  PointGenerator gen(3);
  for (int i = 0; i < 300; ++i) {
    const OperatingPoint p = gen.next();
    const double lo = gen.between(0.0, 1.5);
    const double hi = lo + gen.between(0.01, 1.0);
    for (FactorId id : kAllFactors) {
      EXPECT_LE(with_rate(id, p, hi), with_rate(id, p, lo) + 1e-9)
          << to_string(id) << " rates " << lo << " -> " << hi;
    }
  }
}

TEST(FactorProperties, JensenBoundsExact) {
  PointGenerator gen(4);
  for (int i = 0; i < 1000; ++i) {
    const OperatingPoint p = gen.next();
    const double r = p.rates.r, rt = p.rates.r_tilde;
    EXPECT_GE(gamma1_jensen(p.ch, p.alpha, r) + 1e-9,
              gamma1_exact(p.ch, p.alpha, r));
    EXPECT_GE(gamma2_jensen(p.ch, p.alpha, rt) + 1e-9,
              gamma2_exact(p.ch, p.alpha, rt));
    EXPECT_GE(gamma_bar1_jensen(p.ch, p.alpha, r) + 1e-9,
              gamma_bar1_exact(p.ch, p.alpha, r));
    EXPECT_GE(gamma_bar2_jensen(p.ch, p.alpha, rt) + 1e-9,
              gamma_bar2_exact(p.ch, p.alpha, rt));
    // Treating interference as noise never beats cancelling it.
    EXPECT_GE(gamma1_exact(p.ch, p.alpha, r) + 1e-9,
              gamma_bar1_exact(p.ch, p.alpha, r));
    EXPECT_GE(gamma2_exact(p.ch, p.alpha, rt) + 1e-9,
              gamma_bar2_exact(p.ch, p.alpha, rt));
  }
}

TEST(FactorProperties, CancellationDominatesInterference) {
  PointGenerator gen(5);
  for (int i = 0; i < 1000; ++i) {
    const OperatingPoint p = gen.next();
    const BreveGammas b = breve_gammas(p.ch, p.alpha, p.rates);
    const HatGammas h = hat_gammas(p.ch, p.alpha, p.rates);
    EXPECT_GE(b.g12, h.g12);
    EXPECT_GE(b.g21, h.g21);
  }
}

TEST(FactorProperties, CacheSwapSymmetry) {
  PointGenerator gen(6);
  for (int i = 0; i < 300; ++i) {
    const OperatingPoint p = gen.next();
    const double a = p.alpha.alpha;
    const ChannelParams sch{p.ch.lambda2, p.ch.lambda1, p.ch.power};
    const PowerSplit sa{std::sqrt(1.0 - a * a)};
    const RateConfig sr{p.rates.r_tilde, p.rates.r, p.rates.r_tilde2(),
                        p.rates.r2()};
    const auto f = [&](FactorId id) {
      return factor_value(id, p.ch, p.alpha, p.rates);
    };
    const auto g = [&](FactorId id) { return factor_value(id, sch, sa, sr); };
    EXPECT_NEAR(f(FactorId::eta1), g(FactorId::eta2), 1e-9);
    EXPECT_NEAR(f(FactorId::gamma1_jensen), g(FactorId::gamma2_jensen), 1e-9);
    EXPECT_NEAR(f(FactorId::gamma1_exact), g(FactorId::gamma2_exact), 1e-9);
    EXPECT_NEAR(f(FactorId::gamma_bar1_jensen),
                g(FactorId::gamma_bar2_jensen), 1e-9);
    EXPECT_NEAR(f(FactorId::gamma_bar1_exact), g(FactorId::gamma_bar2_exact),
                1e-9);
    EXPECT_NEAR(f(FactorId::breve11), g(FactorId::breve22), 1e-9);
    EXPECT_NEAR(f(FactorId::breve12), g(FactorId::breve21), 1e-9);
    EXPECT_NEAR(f(FactorId::hat12), g(FactorId::hat21), 1e-9);
    for (Method m : kAllMethods) {
      EXPECT_NEAR(evaluate_stp(m, p.ch, p.alpha, p.rates).stp,
                  evaluate_stp(m, sch, sa, sr).stp, 1e-9)
          << to_string(m);
    }
  }
}

TEST(MethodProperties, JointDominatesSeparateDecoding) {
  PointGenerator gen(8);
  for (int i = 0; i < 500; ++i) {
    const OperatingPoint p = gen.next();
    const double m1 = stp_method1(p.ch, p.alpha, p.rates, GammaMode::exact).stp;
    const double m3 = stp_method3(p.ch, p.alpha, p.rates).stp;
    EXPECT_GE(m1 + 1e-9, m3);
  }
}

}  // namespace
}  // namespace cachewave
