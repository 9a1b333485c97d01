#include "toroidal_lab/errors.hpp"
#include "toroidal_lab/real.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace tlab;

TEST(Real, ParsesExactTokens) {
  EXPECT_TRUE(Real::parse("3/7").is_rational());
  EXPECT_EQ(Real::parse("3/7").rational(), Rational(3, 7));
  EXPECT_EQ(Real::parse("0.25").rational(), Rational(1, 4));
  EXPECT_EQ(Real::parse("-2").rational(), Rational(-2));
  EXPECT_EQ(Real::parse("sqrt(2)").kind(), Real::Kind::surd);
  EXPECT_EQ(Real::parse("sqrt(9)").rational(), Rational(3));
  EXPECT_EQ(Real::parse("golden").kind(), Real::Kind::surd);
  EXPECT_FALSE(Real::parse("float(0.1,53)").is_exact());
}

TEST(Real, RejectsGarbage) {
  EXPECT_THROW(Real::parse(""), ParseError);
  EXPECT_THROW(Real::parse("sqrt("), ParseError);
  EXPECT_THROW(Real::parse("1/0"), ParseError);
  EXPECT_THROW(Real::parse("pi"), ParseError);
}

TEST(Real, CanonicalTokensRoundTrip) {
  for (const char* t : {"3/7", "-5/2", "0", "sqrt(2)", "golden", "surd(1/3,-2,7)", "float(0.1,64)",
                        "superliouville(3,10)"}) {
    const Real x = Real::parse(t);
    const Real y = Real::parse(x.canonical());
    EXPECT_EQ(x.canonical(), y.canonical()) << t;
    EXPECT_DOUBLE_EQ(x.to_double(), y.to_double()) << t;
  }
}

TEST(Real, SurdReducesRadicand) {
  const Real a = Real::parse("sqrt(8)");
  const Real b = Real::from_surd(0, 2, 2);
  EXPECT_EQ(a.canonical(), b.canonical());
  EXPECT_NEAR(a.to_double(), std::sqrt(8.0), 1e-15);
}

TEST(Real, SurdFloorMatchesIntegerSqrt) {
  const Real s2 = Real::from_surd(0, 1, 2);
  for (std::int64_t n = 1; n <= 2000; ++n) {
    const BigInt expected = isqrt(BigInt(2) * n * n);
    EXPECT_EQ(s2.scaled(n).floor(), expected) << n;
  }
}

TEST(Real, ResidueAgreesWithLongDouble) {
  const Real s2 = Real::from_surd(0, 1, 2);
  const long double r2 = std::sqrt(2.0L);
  for (std::int64_t n = 1; n <= 5000; n += 7) {
    const long double x = n * r2;
    const long double off = x - std::round(x);
    const Residue r = s2.scaled(n).residue();
    EXPECT_NEAR(r.offset, static_cast<double>(off), 1e-12) << n;
    EXPECT_FALSE(r.exact_zero);
  }
}

TEST(Real, ExactZeroResidue) {
  const Residue r = Real::from_rational(Rational(3, 7)).scaled(14).residue();
  EXPECT_TRUE(r.exact_zero);
  EXPECT_EQ(r.offset, 0.0);
  const Residue h = Real::from_rational(Rational(1, 2)).residue();
  EXPECT_DOUBLE_EQ(h.distance(), 0.5);
}

TEST(Real, ArithmeticAgreesWithRationalOracle) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> I(-50, 50), D(1, 30);
  for (int i = 0; i < 200; ++i) {
    const Rational a(I(rng), D(rng)), b(I(rng), D(rng));
    const int n = I(rng);
    const Real x = Real::from_rational(a).affine(n, Real::from_rational(b));
    EXPECT_EQ(x.rational(), a * n + b);
    EXPECT_EQ(x.is_integer(), boost::multiprecision::denominator(Rational(a * n + b)) == 1);
  }
}

TEST(Real, FracInUnitInterval) {
  for (const char* t : {"-7/3", "sqrt(2)", "-golden", "5"}) {
    const double f = Real::parse(t).frac().to_double();
    EXPECT_GE(f, 0.0) << t;
    EXPECT_LT(f, 1.0) << t;
  }
}

TEST(Real, StraddlingEnclosureExhaustsPrecision) {
  const Real e = Real::parse("enclosure(1,-10)");
  EXPECT_THROW(e.floor(), PrecisionExhausted);
  EXPECT_THROW(e.is_integer(), PrecisionExhausted);
}

TEST(Real, SuperLiouvilleDepthTwoIsExact) {
  const Real x = Real::super_liouville(2, 10);
  ASSERT_TRUE(x.is_rational());
  EXPECT_EQ(x.rational(), Rational(1, 10) + Rational(BigInt(1), BigInt("10000000000")));
  EXPECT_FALSE(Real::super_liouville(3, 10).is_exact());
}
