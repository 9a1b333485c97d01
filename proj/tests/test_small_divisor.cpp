#include "toroidal_lab/errors.hpp"
#include "toroidal_lab/small_divisor.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace tlab;

namespace {

DerivedConstants constants(const char* q, const char* th, cplx tau = {0, 1}) {
  return derive_constants(GroupParams(tau, Real::from_int(0), Real::parse(q)), Real::parse(th));
}

// sup over the unit torus of |F|, sampled on the evaluation grid
double sup_on_grid(const LaurentSeries2& F, const EvalGrid& g) {
  double s = 0;
  for (double rx : g.xi_radii)
    for (double re : g.eta_radii)
      for (int j = 0; j < g.k_xi; ++j)
        for (int b = 0; b < g.k_eta; ++b)
          s = std::max(s, std::abs(eval_series(F, std::polar(rx, kTwoPi * j / g.k_xi),
                                               std::polar(re, kTwoPi * b / g.k_eta))));
  return s;
}

}  // namespace

TEST(Divisors, Examples) {
  EXPECT_EQ(std::abs(divisor_value(constants("1/3", "2/3"), 0, 2)), 0.0);
  EXPECT_NEAR(divisor_value(constants("0", "0"), 1, 0).real(), std::exp(-kTwoPi) - 1.0, 1e-15);
  const DerivedConstants c = constants("sqrt(2)", "1/3");
  for (int n = -30; n <= 30; ++n) {
    const long double x = n * std::sqrt(2.0L) - 1.0L / 3;
    EXPECT_NEAR(std::abs(divisor_value(c, 0, n)), 2 * std::abs(std::sin(kPi * static_cast<double>(x - std::round(x)))),
                1e-12);
  }
}

TEST(Divisors, LowerBoundAndResonancesOnlyAtZeroRow) {
  for (const char* th : {"1/3", "sqrt(2)", "0"}) {
    const DerivedConstants c = constants("sqrt(2)", th);
    const DivisorTable t = divisor_min_scan(c, 16, 16);
    for (const auto& e : t.entries) {
      const double lb = std::abs(std::pow(std::abs(c.lambda), e.m) - 1.0);
      EXPECT_GE(std::abs(e.value), lb * (1 - 1e-12)) << e.m << "," << e.n;
    }
    for (const auto& [m, n] : t.resonances) EXPECT_EQ(m, 0);
  }
}

TEST(Divisors, MinScanExamples) {
  const DivisorTable t = divisor_min_scan(constants("sqrt(2)", "1/3"), 16, 16);
  EXPECT_EQ(t.min_entry().m, 0);
  const DivisorTable z = divisor_min_scan(constants("0", "0"), 4, 4);
  EXPECT_EQ(std::abs(z.min_entry().value), 0.0);
  EXPECT_EQ(z.min_entry().m, 0);
  EXPECT_EQ(z.resonances.size(), 9u);
  const DerivedConstants c = constants("sqrt(2)", "1/3");
  const DivisorTable one = divisor_min_scan(c, 1, 1);
  ASSERT_EQ(one.entries.size(), 9u);
  for (const auto& e : one.entries) {
    const cplx hand = std::pow(c.lambda, e.m) * std::pow(c.mu, e.n) - c.nu;
    EXPECT_NEAR(std::abs(e.value - hand), 0.0, 1e-14 * (1 + std::abs(hand)));
  }
}

TEST(Cohomological, HandCases) {
  const DerivedConstants c = constants("0", "1/2");
  LaurentSeries2 F = LaurentSeries2::zeros(0, 0, 0, 0);
  F.at(0, 0) = 1.0;
  const CohomSolveReport r = solve_cohomological(F, c);
  EXPECT_NEAR(std::abs(r.G.at(0, 0) - cplx(-0.5)), 0.0, 1e-14);
  EXPECT_LT(verify_functional_equation(r.G, F, c, EvalGrid{}), 1e-14);

  const CohomSolveReport zero = solve_cohomological(LaurentSeries2::zeros(-2, 2, -2, 2), c);
  EXPECT_EQ(zero.G.sup_abs(), 0.0);

  EXPECT_THROW(solve_cohomological(F, constants("0", "0")), ResonantObstruction);

  const LaurentSeries2 G0 = LaurentSeries2::zeros(-1, 1, -1, 1);
  LaurentSeries2 F2 = LaurentSeries2::zeros(-1, 1, -1, 1);
  F2.at(1, -1) = cplx(0.3, 0.4);
  EXPECT_NEAR(verify_functional_equation(G0, F2, constants("sqrt(2)", "1/3"), EvalGrid{}), 0.5, 1e-14);
}

TEST(Cohomological, RandomFixturesSatisfyFunctionalEquation) {
  const DerivedConstants c = constants("sqrt(2)", "1/3");
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> R(-1, 1);
  EvalGrid g;
  g.xi_radii = {0.9, 1.0, 1.1};
  g.eta_radii = {0.9, 1.0, 1.1};
  for (int t = 0; t < 20; ++t) {
    LaurentSeries2 F = LaurentSeries2::zeros(-10, 10, -10, 10);
    for (auto& a : F.coeffs) a = cplx(R(rng), R(rng));
    const CohomSolveReport r = solve_cohomological(F, c);
    EXPECT_LT(verify_functional_equation(r.G, F, c, g), 1e-11 * sup_on_grid(F, g));
    // mode-wise oracle: G_{n,m} (lambda^m mu^n - nu) = nu F_{n,m}
    for (int n = -10; n <= 10; ++n)
      for (int m = -10; m <= 10; ++m) {
        const cplx d = std::pow(c.lambda, m) * std::pow(c.mu, n) - c.nu;
        EXPECT_NEAR(std::abs(r.G.at(n, m) * d - c.nu * F.at(n, m)), 0.0, 1e-12 * (1 + std::abs(r.G.at(n, m) * d)));
      }
  }
}

TEST(Correction, HandCases) {
  const DerivedConstants c = constants("0", "1/2");
  LaurentSeries1 a0 = LaurentSeries1::zeros(0, 0);
  a0.at(0) = 1.0;
  const LaurentSeries1 A = correction_A(a0, c);
  EXPECT_NEAR(std::abs(A.at(0) - cplx(-0.5)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(A.at(0) / c.nu - A.at(0) - a0.at(0)), 0.0, 1e-14);
  const LaurentSeries1 Z = correction_A(LaurentSeries1::zeros(-3, 3), c);
  for (auto x : Z.coeffs) EXPECT_EQ(x, cplx(0.0));
  EXPECT_THROW(correction_A(a0, constants("0", "0")), ResonantObstruction);
}

TEST(Correction, SatisfiesOneVariableEquation) {
  const DerivedConstants c = constants("sqrt(2)", "1/3");
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> R(-1, 1);
  LaurentSeries1 a0 = LaurentSeries1::zeros(-8, 8);
  for (auto& a : a0.coeffs) a = cplx(R(rng), R(rng));
  const LaurentSeries1 A = correction_A(a0, c);
  for (int k = 0; k < 32; ++k) {
    const cplx xi = std::polar(1.0, kTwoPi * k / 32);
    const cplx lhs = eval_series(A, c.lambda * xi) / c.nu - eval_series(A, xi);
    EXPECT_NEAR(std::abs(lhs - eval_series(a0, xi)), 0.0, 1e-10);
  }
}

TEST(Certificates, ZeroAndCorrection) {
  const DerivedConstants c = constants("sqrt(2)", "1/3");
  DecaySlopes zero;
  zero.all_zero = true;
  EXPECT_TRUE(convergence_certificate(zero, divisor_min_scan(c, 8, 8)).certified);
  DecaySlopes xi;
  xi.inner = 1.0;
  xi.outer = -1.0;
  EXPECT_TRUE(correction_certificate(xi, c, true).certified);
}
