#pragma once

// Exact and certified real numbers used for parameters and phases.
//
// A Real is one of
//   - an exact rational,
//   - a quadratic surd a + b*sqrt(d) (d squarefree, b != 0),
//   - an enclosure: a rational center with a bound 2^log2_radius on the error.
// Enclosures come from decimal strings ending in "...", from doubles under a
// declared precision, and from truncated Liouville-type sums.

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

namespace tlab {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

struct QuadraticSurd {
  Rational a;
  Rational b;
  std::int64_t d = 2;
};

struct Enclosure {
  Rational center;
  double log2_radius = -53.0;
  std::string origin;  // canonical token, empty when synthesized
};

// Signed offset of a real from its nearest integer.
struct Residue {
  double offset = 0.0;  // x - round(x), in [-1/2, 1/2]
  double error = 0.0;   // bound on the error of `offset`
  bool exact_zero = false;
  double distance() const { return std::abs(offset); }
};

class Real {
 public:
  enum class Kind { rational, surd, enclosure };

  Real() : v_(Rational(0)) {}

  static Real from_rational(Rational r);
  static Real from_int(std::int64_t n) { return from_rational(Rational(n)); }
  // a + b*sqrt(radicand); radicand > 0 is reduced to its squarefree part.
  static Real from_surd(Rational a, Rational b, std::int64_t radicand);
  static Real from_double(double x, int precision_bits);
  static Real from_enclosure(Enclosure e);
  // sum_{j<=depth} base^{-a_j}, a_1 = 1, a_{j+1} = base^{a_j}. Exact when the
  // whole sum fits the bit budget, an enclosure otherwise.
  static Real super_liouville(int depth, std::int64_t base);
  static Real golden() { return from_surd(Rational(1, 2), Rational(1, 2), 5); }

  // Tokens: integers, "a/b", decimals ("0.25" exact, "3.14159..." enclosure),
  // "sqrt(k)", "golden", "surd(a,b,d)", "float(x,bits)",
  // "superliouville(depth,base)", "enclosure(center,log2_radius)".
  static Real parse(std::string_view token, int precision_bits = 53);

  Kind kind() const { return static_cast<Kind>(v_.index()); }
  bool is_exact() const { return kind() != Kind::enclosure; }
  bool is_rational() const { return kind() == Kind::rational; }
  const Rational& rational() const;
  const QuadraticSurd& surd() const;
  const Enclosure& enclosure() const;

  std::string canonical() const;
  double to_double() const;

  Real operator-() const;
  friend Real operator+(const Real& x, const Real& y);
  friend Real operator-(const Real& x, const Real& y) { return x + (-y); }
  Real scaled(std::int64_t n) const;
  // n*this + shift
  Real affine(std::int64_t n, const Real& shift) const { return scaled(n) + shift; }

  Residue residue() const;
  // Exact floor; enclosures straddling an integer raise PrecisionExhausted.
  BigInt floor() const;
  // this - floor(this), in [0, 1).
  Real frac() const;
  // Exact integrality; enclosures raise PrecisionExhausted.
  bool is_integer() const;
  int sign() const;
  // Rational center and radius bound 2^-bits (exact kinds) or the enclosure itself.
  Enclosure to_enclosure(int bits) const;
  // [lo, hi] rational bracket that certainly contains the value.
  void bracket(Rational& lo, Rational& hi, int bits = 128) const;

 private:
  explicit Real(Rational r) : v_(std::move(r)) {}
  explicit Real(QuadraticSurd s) : v_(std::move(s)) {}
  explicit Real(Enclosure e) : v_(std::move(e)) {}
  std::variant<Rational, QuadraticSurd, Enclosure> v_;
};

std::string to_string(const Rational& r);
BigInt floor_div(const BigInt& a, const BigInt& b);
BigInt isqrt(const BigInt& n);
// Radius bound actually used in exact comparisons: 2^max(ceil(log2_radius), -4096).
Rational radius_bound(double log2_radius);

}  // namespace tlab
