#include "toroidal_lab/diophantine.hpp"
#include "toroidal_lab/errors.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace tlab;

TEST(ContinuedFraction, GoldenIsAllOnes) {
  const ContinuedFraction cf = continued_fraction(Real::golden(), 10);
  ASSERT_GE(cf.quotients.size(), 10u);
  for (const auto& a : cf.quotients) EXPECT_EQ(a, 1);
  EXPECT_FALSE(cf.terminated);
}

TEST(ContinuedFraction, RationalTerminates) {
  const ContinuedFraction cf = continued_fraction(Real::parse("3/7"), 10);
  EXPECT_TRUE(cf.terminated);
  ASSERT_EQ(cf.quotients.size(), 3u);
  EXPECT_EQ(cf.quotients[0], 0);
  EXPECT_EQ(cf.quotients[1], 2);
  EXPECT_EQ(cf.quotients[2], 3);
  const ContinuedFraction z = continued_fraction(Real::from_int(0), 10);
  EXPECT_TRUE(z.terminated);
  ASSERT_EQ(z.quotients.size(), 1u);
  EXPECT_EQ(z.quotients[0], 0);
}

TEST(ContinuedFraction, ConvergentRecurrenceAndErrorBound) {
  for (const char* t : {"sqrt(2)", "sqrt(7)", "golden", "surd(1/3,2,11)", "355/113"}) {
    const Real x = Real::parse(t);
    const ContinuedFraction cf = continued_fraction(x, 30);
    for (std::size_t k = 2; k < cf.quotients.size(); ++k) {
      EXPECT_EQ(cf.p[k], cf.quotients[k] * cf.p[k - 1] + cf.p[k - 2]) << t;
      EXPECT_EQ(cf.q[k], cf.quotients[k] * cf.q[k - 1] + cf.q[k - 2]) << t;
    }
    // |x - p_k/q_k| < 1/(q_k q_{k+1}), checked with exact rational brackets
    for (std::size_t k = 0; k + 1 < cf.quotients.size(); ++k) {
      Rational lo, hi;
      x.bracket(lo, hi, 256);
      const Rational conv(cf.p[k], cf.q[k]);
      const Rational bound(BigInt(1), cf.q[k] * cf.q[k + 1]);
      const Rational err = boost::multiprecision::abs(hi - conv) > boost::multiprecision::abs(lo - conv)
                               ? boost::multiprecision::abs(hi - conv)
                               : boost::multiprecision::abs(lo - conv);
      // equality only at the last step of a rational expansion
      if (cf.terminated && k + 2 == cf.quotients.size())
        EXPECT_LE(err, bound) << t << " k=" << k;
      else
        EXPECT_LT(err, bound) << t << " k=" << k;
    }
  }
}

TEST(ContinuedFraction, EnclosureExhausts) {
  EXPECT_THROW(continued_fraction(Real::parse("float(0.7071067811865476,53)"), 60), PrecisionExhausted);
  const ContinuedFraction pre = continued_fraction_prefix(Real::parse("float(0.7071067811865476,53)"), 60);
  EXPECT_TRUE(pre.exhausted);
  EXPECT_GT(pre.quotients.size(), 5u);
}

TEST(Distances, Examples) {
  const DistanceSequence f = distance_sequence_fiber(Real::parse("1/2"), Real::from_int(0), 20);
  for (const auto& e : f.entries) {
    if (e.n % 2 == 0)
      EXPECT_TRUE(e.exact_zero) << e.n;
    else
      EXPECT_NEAR(e.value(), 0.5, 1e-15) << e.n;
  }
  const DistanceSequence l = distance_sequence_lattice(Real::from_int(0), Real::from_int(0), 20);
  for (const auto& e : l.entries) EXPECT_TRUE(e.exact_zero);
}

TEST(Distances, GoldenHurwitzBound) {
  // n ||n phi|| tends to 1/sqrt5 from below along even-index Fibonacci n, where it equals
  // (1 - phi^{-2k})/sqrt5 = (1 - O(1/n^2))/sqrt5; the slack is checked against that
  const DistanceSequence d = distance_sequence_fiber(Real::golden(), Real::from_int(0), 100);
  const double phi = (1 + std::sqrt(5.0)) / 2;
  for (const auto& e : d.entries) {
    const double n = static_cast<double>(e.n);
    EXPECT_GE(n * e.value(), (1.0 - 1.0 / (n * n)) / std::sqrt(5.0) - 1e-12) << e.n;
  }
  // the Fibonacci denominators attain phi^{-k}
  long long f0 = 1, f1 = 2;
  for (int k = 2; f1 <= 100; ++k) {
    EXPECT_NEAR(d.entries[static_cast<std::size_t>(f1 - 1)].value(), std::pow(phi, -k - 1) , 1e-12) << f1;
    const long long f2 = f0 + f1;
    f0 = f1;
    f1 = f2;
  }
}

TEST(Distances, RangeAndOracle) {
  const Real q = Real::parse("sqrt(3)"), th = Real::parse("1/5");
  const DistanceSequence d = distance_sequence_fiber(q, th, 500);
  const DistanceSequence l = distance_sequence_lattice(Real::parse("1/3"), q, 500);
  for (const auto& e : d.entries) {
    const long double x = e.n * std::sqrt(3.0L) - 0.2L;
    const double oracle = static_cast<double>(std::abs(x - std::round(x)));
    EXPECT_NEAR(e.value(), oracle, 1e-12);
    EXPECT_LE(e.value(), 0.5);
  }
  for (const auto& e : l.entries) EXPECT_LE(e.value(), std::sqrt(2.0) / 2 + 1e-15);
}

TEST(Classification, ExamplesFromValues) {
  std::vector<double> inv, sq, zero;
  for (int n = 1; n <= 60; ++n) {
    inv.push_back(1.0 / n);
    sq.push_back(std::ldexp(1.0, -std::min(n * n, 1000)));
    zero.push_back(n == 7 ? 0.0 : 0.25);
  }
  const ClassificationReport a = exp_bound_scan(distance_sequence_from_values(DistanceKind::fiber, inv), 0.25);
  EXPECT_EQ(a.verdict, Verdict::theta_evidence);
  for (int n = 1; n <= 60; ++n) EXPECT_GE(1.0 / n, a.A * std::pow(a.delta, n) * (1 - 1e-12));
  for (double d0 : {0.5, 0.9, 0.99}) {
    const ClassificationReport b = exp_bound_scan(distance_sequence_from_values(DistanceKind::fiber, sq), d0);
    EXPECT_EQ(b.verdict, Verdict::wild_witness);
    ASSERT_TRUE(b.witness_n.has_value());
    const double n = static_cast<double>(*b.witness_n);
    EXPECT_GT(n * n * std::log(2.0), n * std::log(1 / d0));
  }
  const ClassificationReport c = exp_bound_scan(distance_sequence_from_values(DistanceKind::fiber, zero), 0.25);
  EXPECT_EQ(c.verdict, Verdict::wild_witness);
  EXPECT_TRUE(c.resonant);
  EXPECT_EQ(c.witness_n.value_or(-1), 7);
}

TEST(Margins, HsExamples) {
  const cplx i(0, 1);
  EXPECT_GT(hs_margin(i, std::sqrt(2.0), 1.0 / 3, 0.1, 50), 0.0);
  EXPECT_EQ(hs_margin(i, std::sqrt(2.0), std::sqrt(2.0), 0.1, 5), 0.0);
  // box = 1 against a hand-written enumeration
  const double q = std::sqrt(2.0), th = 1.0 / 3, a = 0.1;
  double best = INFINITY;
  int terms = 0;
  for (int m1 : {-1, 0, 1})
    for (int m2 : {-1, 0, 1})
      for (int m3 : {-1, 0, 1}) {
        if (m1 == 0 && m2 == 0) continue;
        ++terms;
        best = std::min(best, std::abs(i * double(m1) + q * m2 - double(m3) - th) * std::exp(a));
      }
  EXPECT_EQ(terms, 24);
  EXPECT_DOUBLE_EQ(hs_margin(i, q, th, a, 1), best);
}

TEST(Margins, KazamaExamples) {
  const cplx tau(0.3, 1.7);
  // p = q = 0: m = (1,0,0) contributes e^{-a}/|tau|, but m = (0,1,0) has denominator 0
  EXPECT_THROW(kazama_margin(tau, Real::from_int(0), Real::from_int(0), 1.0, 1), ResonanceError);
  const double v = kazama_margin(tau, Real::from_int(0), Real::parse("sqrt(2)"), 1.0, 1);
  EXPECT_GE(v, std::exp(-1.0) / std::abs(tau) - 1e-15);
  const double bounded = kazama_margin(cplx(0, 1), Real::from_int(0), Real::parse("sqrt(2)"), 0.5, 30);
  EXPECT_TRUE(std::isfinite(bounded));
  EXPECT_LT(bounded, 100.0);
  EXPECT_THROW(kazama_margin(cplx(0, 1), Real::parse("1/2"), Real::from_int(0), 0.5, 2), ResonanceError);
}

TEST(NormEquivalence, ConstantsAndSandwich) {
  const NormConstants a = norm_equiv_constants(cplx(0, 1));
  EXPECT_NEAR(a.k_lower, 1.0, 1e-12);
  EXPECT_NEAR(a.k_upper, 1.0, 1e-12);
  const NormConstants b = norm_equiv_constants(cplx(0, 2));
  EXPECT_NEAR(b.k_lower, 1.0, 1e-12);
  EXPECT_NEAR(b.k_upper, 2.0, 1e-12);
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<int> I(-500, 500);
  for (const cplx tau : {cplx(0, 1), cplx(0, 2), cplx(1, 1), cplx(-0.4, 0.3)}) {
    const NormConstants k = norm_equiv_constants(tau);
    for (int t = 0; t < 20000; ++t) {
      const int u = I(rng), v = I(rng);
      const double n = std::hypot(u, v), x = std::abs(tau * double(u) + double(v));
      EXPECT_GE(x, k.k_lower * n * (1 - 1e-12));
      EXPECT_LE(x, k.k_upper * n * (1 + 1e-12));
    }
  }
}

TEST(SuperLiouville, DepthThreeCertifiesHugeWitness) {
  const SuperLiouville s = make_super_liouville(3, 10);
  bool any = false;
  for (const auto& w : s.witnesses)
    if (w.certified && w.n == 10000000000LL) any = true;
  EXPECT_TRUE(any);
  const ClassificationReport r = exp_bound_scan(witness_sequence(s), 0.25);
  EXPECT_EQ(r.verdict, Verdict::wild_witness);
}

TEST(SuperLiouville, DepthTwoWitnessAtTen) {
  // dist(10 q, Z) = 10^-9, which is below 2^-10
  const SuperLiouville s = make_super_liouville(2, 10);
  EXPECT_TRUE(s.finite_sum_rational);
  bool found = false;
  for (const auto& w : s.witnesses)
    if (w.n == 10) {
      found = true;
      EXPECT_NEAR(w.log_distance_upper, std::log(1e-9), 1e-9);
      EXPECT_TRUE(w.certified);
    }
  EXPECT_TRUE(found);
}

TEST(SuperLiouville, Degenerate) {
  const SuperLiouville s = make_super_liouville(2, 2);
  EXPECT_TRUE(s.value.is_rational());
  EXPECT_EQ(s.value.rational(), Rational(3, 4));
  EXPECT_TRUE(s.finite_sum_rational);
}

TEST(ResonanceSearch, Examples) {
  const GroupParams g(cplx(0, 1), Real::from_int(0), Real::parse("sqrt(2)"));
  const auto hit = resonance_search(g, Real::from_int(0), Real::parse("sqrt(2)"), 5, 1e-9);
  bool found = false;
  for (const auto& s : hit) found = found || (s[0] == 0 && s[1] == 1 && s[2] == 0);
  EXPECT_TRUE(found);
  EXPECT_TRUE(resonance_search(g, Real::from_int(0), Real::parse("1/3"), 20, 1e-9).empty());
  EXPECT_TRUE(resonance_search(g, Real::parse("1/2"), Real::parse("1/3"), 20, 1e-9).empty());
}
