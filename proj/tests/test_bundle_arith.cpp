#include "toroidal_lab/bundle_arith.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace tlab;

namespace {

Character ch(const char* a, const char* b) { return Character(Real::parse(a), Real::parse(b)); }

bool integral(const Rational& r) { return boost::multiprecision::denominator(r) == 1; }

}  // namespace

TEST(BundleArith, TensorExamples) {
  const Character a = char_tensor(ch("0", "0"), ch("2/5", "3/7"));
  EXPECT_EQ(a.phase1().rational(), Rational(2, 5));
  EXPECT_EQ(a.phase2().rational(), Rational(3, 7));
  const Character b = char_tensor(ch("1/2", "1/3"), ch("1/2", "2/3"));
  EXPECT_TRUE(is_trivial_flat(b).trivial);
  const Character c = char_tensor(ch("0.3", "0.9"), ch("0.8", "0.2"));
  EXPECT_EQ(c.phase1().rational(), Rational(1, 10));
  EXPECT_EQ(c.phase2().rational(), Rational(1, 10));
}

TEST(BundleArith, TwistExamples) {
  const Character E = ch("0", "1/3");
  const Character F = ch("0", "sqrt(2)");
  EXPECT_EQ(twist_character(F, E, 0).phase2().canonical(), E.phase2().canonical());
  EXPECT_NEAR(twist_character(F, E, 1).phase2().to_double(), std::fmod(std::sqrt(2.0) + 1.0 / 3.0, 1.0), 1e-15);
  EXPECT_TRUE(is_trivial_flat(twist_character(ch("0", "1/3"), ch("0", "1/3"), 2)).trivial);
}

TEST(BundleArith, TrivialityPolicy) {
  EXPECT_TRUE(is_trivial_flat(ch("0", "0")).trivial);
  EXPECT_EQ(is_trivial_flat(ch("0", "0")).flag, TrivialityFlag::exact);
  EXPECT_FALSE(is_trivial_flat(ch("1/2", "0")).trivial);
  const Triviality t = is_trivial_flat(Character(Real::from_double(1e-15, 53), Real::from_int(0)));
  EXPECT_TRUE(t.trivial);
  EXPECT_EQ(t.flag, TrivialityFlag::numerical);
}

TEST(BundleArith, H0Elliptic) {
  EXPECT_EQ(h0_flat_elliptic(ch("0", "0")), 1);
  EXPECT_EQ(h0_flat_elliptic(ch("1/2", "0")), 0);
  EXPECT_EQ(h0_flat_elliptic(ch("0", "1/3")), 0);
  EXPECT_EQ(h0_flat_elliptic(ch("3", "-2")), 1);
}

TEST(BundleArith, AssumptionExamples) {
  const GroupParams g(cplx(0, 1), Real::from_int(0), Real::parse("sqrt(2)"));
  const AssumptionReport a = thm_assumption_check(g, Real::from_int(0), Real::parse("1/3"), 100);
  EXPECT_TRUE(a.pass);
  EXPECT_FALSE(a.scanned);
  const AssumptionReport b = thm_assumption_check(g, Real::from_int(0), Real::parse("sqrt(2)"), 100);
  EXPECT_FALSE(b.pass);
  ASSERT_TRUE(b.witness.has_value());
  EXPECT_EQ(*b.witness, -1);
}

TEST(BundleArith, AssumptionAgreesWithResidueBruteForce) {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> D(1, 8);
  for (int t = 0; t < 300; ++t) {
    auto r = [&]() {
      const int d = D(rng);
      return Rational(std::uniform_int_distribution<int>(0, d - 1)(rng), d);
    };
    const Rational p = r(), q = r(), t1 = r(), t2 = r();
    const AssumptionReport a = thm_assumption_check(
        GroupParams(cplx(0, 1), Real::from_rational(p), Real::from_rational(q)), Real::from_rational(t1),
        Real::from_rational(t2), 10);
    // one period of n mod lcm(denominators) decides every n
    bool exists = false;
    for (int n = -400; n <= 400 && !exists; ++n) exists = integral(t1 + n * p) && integral(t2 + n * q);
    EXPECT_EQ(a.pass, !exists);
    if (!a.pass) {
      ASSERT_TRUE(a.witness.has_value());
      EXPECT_TRUE(integral(t1 + *a.witness * p) && integral(t2 + *a.witness * q));
    }
  }
}

TEST(BundleArith, H0SpectrumExamples) {
  EXPECT_EQ(h0_spectrum(ch("0", "1/2"), ch("0", "1/4"), -4, 4).total(), 0);
  const H0Spectrum s = h0_spectrum(ch("0", "1/2"), ch("0", "0"), -4, 4);
  EXPECT_EQ(s.total(), 5);
  for (const auto& e : s.entries) EXPECT_EQ(e.dim, e.n % 2 == 0 ? 1 : 0) << e.n;
  EXPECT_EQ(h0_spectrum(ch("0", "0"), ch("0", "0"), -3, 3).total(), 7);
}

TEST(BundleArith, NeighborhoodExamples) {
  EXPECT_TRUE(neighborhood_vanishing_check(ch("0", "1/3"), ch("0", "1/2"), 10).holds);
  const NeighborhoodVerdict b = neighborhood_vanishing_check(ch("0", "1/2"), ch("0", "1/2"), 10);
  EXPECT_FALSE(b.holds);
  ASSERT_TRUE(b.first_failure.has_value());
  EXPECT_EQ(*b.first_failure, 1);
  EXPECT_FALSE(neighborhood_vanishing_check(ch("0", "0"), ch("1/3", "1/5"), 0).holds);
}

TEST(BundleArith, IntegerSolutionsKinds) {
  const IntegerSolutions none = integer_solutions(Real::parse("0"), Real::parse("1/2"));
  EXPECT_EQ(none.kind, IntegerSolutions::Kind::empty);
  const IntegerSolutions all = integer_solutions(Real::parse("0"), Real::parse("3"));
  EXPECT_EQ(all.kind, IntegerSolutions::Kind::progression);
  EXPECT_EQ(all.period, 1);
  const IntegerSolutions prog = integer_solutions(Real::parse("1/3"), Real::parse("1/3"));
  EXPECT_TRUE(prog.contains(2));
  EXPECT_TRUE(prog.contains(-1));
  EXPECT_FALSE(prog.contains(0));
  const IntegerSolutions single = integer_solutions(Real::parse("sqrt(2)"), Real::parse("-sqrt(2)"));
  EXPECT_EQ(single.kind, IntegerSolutions::Kind::single);
  EXPECT_EQ(single.residue, 1);
}
