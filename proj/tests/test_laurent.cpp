#include "toroidal_lab/errors.hpp"
#include "toroidal_lab/laurent.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace tlab;

namespace {

std::vector<cplx> circle(int K, double r, const std::function<cplx(cplx)>& f) {
  std::vector<cplx> s;
  for (int k = 0; k < K; ++k) s.push_back(f(std::polar(r, kTwoPi * k / K)));
  return s;
}

}  // namespace

TEST(Laurent, MonomialCoefficients) {
  const auto s = coeffs_from_circle_samples(circle(16, 1.0, [](cplx z) { return z * z * z; }), 1.0, -7, 7);
  for (int n = -7; n <= 7; ++n) EXPECT_NEAR(std::abs(s.at(n) - cplx(n == 3 ? 1.0 : 0.0)), 0.0, 1e-13) << n;
  const auto inv = coeffs_from_circle_samples(circle(16, 2.0, [](cplx z) { return 1.0 / z; }), 2.0, -7, 7);
  for (int n = -7; n <= 7; ++n) EXPECT_NEAR(std::abs(inv.at(n) - cplx(n == -1 ? 1.0 : 0.0)), 0.0, 1e-13) << n;
  const auto z = coeffs_from_circle_samples(std::vector<cplx>(16), 1.0, -7, 7);
  for (auto c : z.coeffs) EXPECT_EQ(c, cplx(0.0));
}

TEST(Laurent, EvalExamples) {
  LaurentSeries2 c = LaurentSeries2::zeros(0, 0, 0, 0);
  c.at(0, 0) = cplx(2.5, -1.0);
  EXPECT_EQ(eval_series(c, {0.3, 0.1}, {-4.0, 2.0}), cplx(2.5, -1.0));
  LaurentSeries2 e = LaurentSeries2::zeros(1, 1, 0, 0);
  e.at(1, 0) = 1.0;
  EXPECT_NEAR(std::abs(eval_series(e, 1.0, 2.0) - cplx(2.0)), 0.0, 1e-15);
}

TEST(Laurent, EvalThenExtractRoundTrip) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> R(-1, 1);
  for (double r : {0.5, 1.0, 1.7}) {
    LaurentSeries1 s = LaurentSeries1::zeros(-6, 6);
    for (auto& a : s.coeffs) a = cplx(R(rng), R(rng));
    const auto back = coeffs_from_circle_samples(circle(32, r, [&](cplx z) { return eval_series(s, z); }), r, -6, 6);
    for (int m = -6; m <= 6; ++m) EXPECT_NEAR(std::abs(back.at(m) - s.at(m)), 0.0, 1e-12 * std::pow(r, -m) + 1e-12);
  }
}

TEST(Laurent, DecaySlopes) {
  LaurentSeries1 s = LaurentSeries1::zeros(0, 20);
  for (int n = 0; n <= 20; ++n) s.at(n) = std::pow(0.3, n);
  EXPECT_NEAR(*decay_rate_fit(s).outer, std::log(0.3), 1e-6);
  LaurentSeries1 b = LaurentSeries1::zeros(-15, 15);
  for (int n = -15; n <= 15; ++n) b.at(n) = std::pow(2.0, -std::abs(n));
  const DecaySlopes d = decay_rate_fit(b);
  EXPECT_NEAR(*d.outer, -std::log(2.0), 1e-9);
  EXPECT_NEAR(*d.inner, std::log(2.0), 1e-9);
  LaurentSeries1 one = LaurentSeries1::zeros(-3, 3);
  one.at(0) = 1.0;
  EXPECT_THROW(decay_rate_fit(one), DegenerateFit);
}

TEST(Laurent, WeightedNorm) {
  LaurentSeries2 a = LaurentSeries2::zeros(0, 0, 0, 0);
  a.at(0, 0) = 3.0;
  EXPECT_DOUBLE_EQ(weighted_norm(a, [](int, int) { return 1.0; }), 3.0);
  LaurentSeries2 b = LaurentSeries2::zeros(-2, 2, 0, 0);
  for (int n = -2; n <= 2; ++n) b.at(n, 0) = 1.0;
  EXPECT_NEAR(weighted_norm(b, [](int n, int) { return std::pow(2.0, -std::abs(n)); }),
              std::sqrt(1 + 2 * 0.25 + 2 * 0.0625), 1e-15);
  EXPECT_EQ(weighted_norm(LaurentSeries2::zeros(0, -1, 0, -1), [](int, int) { return 1.0; }), 0.0);
}

TEST(Laurent, GridAliasingGuard) {
  LogPolarGrid g;
  g.k_xi = 16;
  g.k_eta = 16;
  EXPECT_NO_THROW(g.check_modes(7, 7));
  EXPECT_THROW(g.check_modes(8, 0), AliasingError);
}
