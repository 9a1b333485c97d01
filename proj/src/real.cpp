#include "toroidal_lab/real.hpp"

#include "toroidal_lab/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <limits>

namespace tlab {

namespace mp = boost::multiprecision;

namespace {

constexpr int kBitBudget = 65536;
constexpr int kSurdEnclosureBits = 200;

struct SurdParts {
  BigInt P, Q, R;  // value = (P + Q sqrt(d)) / R, R > 0
  std::int64_t d;
};

SurdParts parts_of(const QuadraticSurd& s) {
  BigInt ad = mp::denominator(s.a);
  BigInt bd = mp::denominator(s.b);
  BigInt R = mp::lcm(ad, bd);
  return {mp::numerator(s.a) * (R / ad), mp::numerator(s.b) * (R / bd), R, s.d};
}

// Exact sign of P + Q sqrt(d).
int surd_sign(const BigInt& P, const BigInt& Q, std::int64_t d) {
  int sp = P.sign();
  int sq = Q.sign();
  if (sq == 0) return sp;
  if (sp == 0 || sp == sq) return sq;
  BigInt lhs = P * P;
  BigInt rhs = Q * Q * d;
  return lhs > rhs ? sp : sq;
}

BigInt surd_floor(const BigInt& P, const BigInt& Q, const BigInt& R, std::int64_t d) {
  if (Q == 0) return floor_div(P, R);
  // Q sqrt(d) lies strictly between consecutive integers since d is not a square.
  BigInt k = isqrt(Q * Q * d);
  if (Q > 0) return floor_div(P + k, R);
  return floor_div(P - k - 1, R);
}

// (P + Q sqrt(d)) / R without catastrophic cancellation.
double surd_value(const BigInt& P, const BigInt& Q, const BigInt& R, std::int64_t d) {
  const double sd = std::sqrt(static_cast<double>(d));
  const double r = R.convert_to<double>();
  if (Q == 0) return Rational(P, R).convert_to<double>();
  if (P == 0 || P.sign() == Q.sign()) {
    return (P.convert_to<double>() + Q.convert_to<double>() * sd) / r;
  }
  BigInt N = P * P - Q * Q * d;
  double den = (P.convert_to<double>() - Q.convert_to<double>() * sd) * r;
  return N.convert_to<double>() / den;
}

double log2_add(double a, double b) {
  if (a == -std::numeric_limits<double>::infinity()) return b;
  if (b == -std::numeric_limits<double>::infinity()) return a;
  double hi = std::max(a, b);
  double lo = std::min(a, b);
  return hi + std::log2(1.0 + std::exp2(lo - hi));
}

BigInt pow_big(std::int64_t base, std::int64_t e) {
  BigInt r = 1;
  BigInt b = base;
  while (e > 0) {
    if (e & 1) r *= b;
    e >>= 1;
    if (e) b *= b;
  }
  return r;
}

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

// cpp_int reads a leading 0 as an octal prefix, so strip it first.
BigInt decimal_bigint(std::string_view s) {
  bool negative = false;
  if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
    negative = s[0] == '-';
    s.remove_prefix(1);
  }
  while (s.size() > 1 && s[0] == '0') s.remove_prefix(1);
  if (s.empty()) return 0;
  BigInt v(std::string{s});
  return negative ? BigInt(-v) : v;
}

std::int64_t parse_int64(std::string_view s) {
  std::string t = trim(s);
  std::string_view body = t;
  if (!body.empty() && (body[0] == '+' || body[0] == '-')) body.remove_prefix(1);
  if (!all_digits(body) || body.size() > 18) throw ParseError("expected an integer, got '" + t + "'");
  return std::stoll(t);
}

// Integers, "a/b" and plain decimals (optionally with exponent and trailing "...").
bool parse_number(const std::string& t, Real& out) {
  std::size_t slash = t.find('/');
  if (slash != std::string::npos) {
    std::string num = t.substr(0, slash);
    std::string den = t.substr(slash + 1);
    std::string_view nb = num;
    if (!nb.empty() && (nb[0] == '+' || nb[0] == '-')) nb.remove_prefix(1);
    if (!all_digits(nb) || !all_digits(den)) return false;
    BigInt n = decimal_bigint(num);
    BigInt d = decimal_bigint(den);
    if (d == 0) throw ParseError("zero denominator in '" + t + "'");
    out = Real::from_rational(Rational(n, d));
    return true;
  }
  std::size_t i = 0;
  bool negative = false;
  if (i < t.size() && (t[i] == '+' || t[i] == '-')) negative = t[i++] == '-';
  std::string int_digits;
  std::string frac_digits;
  while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) int_digits += t[i++];
  bool ellipsis = false;
  if (t.compare(i, 3, "...") == 0 && i + 3 == t.size()) {
    ellipsis = true;
    i += 3;
  } else if (i < t.size() && t[i] == '.') {
    ++i;
    while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) frac_digits += t[i++];
  }
  if (int_digits.empty() && frac_digits.empty()) return false;
  long exponent = 0;
  if (!ellipsis && i < t.size() && (t[i] == 'e' || t[i] == 'E')) {
    ++i;
    std::size_t start = i;
    if (i < t.size() && (t[i] == '+' || t[i] == '-')) ++i;
    while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) ++i;
    if (i == start) return false;
    exponent = std::stol(t.substr(start, i - start));
    if (std::labs(exponent) > 4000) throw ParseError("decimal exponent out of range in '" + t + "'");
  }
  if (!ellipsis && t.compare(i, 3, "...") == 0 && i + 3 == t.size()) {
    ellipsis = true;
    i += 3;
  }
  if (i != t.size()) return false;
  BigInt mantissa = decimal_bigint(int_digits + frac_digits);
  long scale = exponent - static_cast<long>(frac_digits.size());
  Rational value(mantissa);
  if (scale >= 0) {
    value *= Rational(pow_big(10, scale));
  } else {
    value /= Rational(pow_big(10, -scale));
  }
  if (negative) value = -value;
  if (!ellipsis) {
    out = Real::from_rational(value);
    return true;
  }
  Enclosure e;
  e.center = value;
  e.log2_radius = static_cast<double>(scale) * std::log2(10.0);
  e.origin = t[0] == '+' ? t.substr(1) : t;
  out = Real::from_enclosure(e);
  return true;
}

// Splits "name(x,y,...)" into its arguments.
bool call_args(const std::string& t, const std::string& name, std::vector<std::string>& args) {
  if (t.size() < name.size() + 2 || t.compare(0, name.size() + 1, name + "(") != 0 || t.back() != ')') {
    return false;
  }
  std::string inner = t.substr(name.size() + 1, t.size() - name.size() - 2);
  args.clear();
  std::size_t start = 0;
  while (true) {
    std::size_t comma = inner.find(',', start);
    args.push_back(trim(inner.substr(start, comma == std::string::npos ? std::string::npos : comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return true;
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

std::string to_string(const Rational& r) {
  if (mp::denominator(r) == 1) return mp::numerator(r).str();
  return mp::numerator(r).str() + "/" + mp::denominator(r).str();
}

BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;  // truncates toward zero
  if ((a % b != 0) && ((a.sign() < 0) != (b.sign() < 0))) q -= 1;
  return q;
}

BigInt isqrt(const BigInt& n) {
  if (n < 0) throw DomainError("isqrt of a negative integer");
  return mp::sqrt(n);
}

Rational radius_bound(double log2_radius) {
  if (log2_radius == -std::numeric_limits<double>::infinity()) return Rational(0);
  long e = static_cast<long>(std::ceil(std::max(log2_radius, -4096.0)));
  if (e >= 0) return Rational(BigInt(1) << e);
  return Rational(BigInt(1), BigInt(1) << (-e));
}

Real Real::from_rational(Rational r) { return Real(std::move(r)); }

Real Real::from_surd(Rational a, Rational b, std::int64_t radicand) {
  if (radicand <= 0) throw DomainError("surd radicand must be positive");
  if (radicand > 1000000000000LL) throw DomainError("surd radicand too large");
  std::int64_t k = radicand;
  std::int64_t s = 1;
  for (std::int64_t i = 2; i * i <= k; ++i) {
    while (k % (i * i) == 0) {
      k /= i * i;
      s *= i;
    }
  }
  b *= s;
  if (k == 1 || b == 0) return Real(Rational(a + b * (k == 1 ? 1 : 0)));
  return Real(QuadraticSurd{std::move(a), std::move(b), k});
}

Real Real::from_double(double x, int precision_bits) {
  if (!std::isfinite(x)) throw DomainError("non-finite real input");
  if (precision_bits < 53) throw DomainError("precision context must be at least 53 bits");
  int e = 0;
  double m = std::frexp(x, &e);
  auto mant = static_cast<std::int64_t>(std::ldexp(m, 53));
  e -= 53;
  Rational c(mant);
  if (e >= 0) {
    c *= Rational(BigInt(1) << e);
  } else {
    c /= Rational(BigInt(1) << (-e));
  }
  Enclosure enc;
  enc.center = c;
  enc.log2_radius = (x == 0.0 ? 0.0 : std::log2(std::abs(x))) - precision_bits;
  enc.origin = "float(" + format_double(x) + "," + std::to_string(precision_bits) + ")";
  return Real(std::move(enc));
}

Real Real::from_enclosure(Enclosure e) {
  if (e.log2_radius == -std::numeric_limits<double>::infinity()) return Real(std::move(e.center));
  if (std::isnan(e.log2_radius)) throw DomainError("enclosure radius is NaN");
  return Real(std::move(e));
}

Real Real::super_liouville(int depth, std::int64_t base) {
  if (depth < 2 || depth > 4) throw DomainError("super-Liouville depth must lie in [2, 4]");
  if (base < 2) throw DomainError("super-Liouville base must be at least 2");
  std::vector<std::int64_t> a{1};
  for (int j = 1; j < depth; ++j) {
    BigInt next = 1;
    for (std::int64_t i = 0; i < a.back(); ++i) {
      next *= base;
      if (next > std::numeric_limits<std::int64_t>::max()) {
        throw OverflowError("super-Liouville exponent a_" + std::to_string(j + 1) + " exceeds the 64-bit budget");
      }
    }
    a.push_back(static_cast<std::int64_t>(next));
  }
  const double lb = std::log2(static_cast<double>(base));
  Rational center = 0;
  std::size_t fitted = 0;
  for (std::int64_t aj : a) {
    if (static_cast<double>(aj) * lb > kBitBudget) break;
    center += Rational(BigInt(1), pow_big(base, aj));
    ++fitted;
  }
  if (fitted == a.size()) return Real(std::move(center));
  Enclosure e;
  e.center = std::move(center);
  e.log2_radius = 1.0 - static_cast<double>(a[fitted]) * lb;
  e.origin = "superliouville(" + std::to_string(depth) + "," + std::to_string(base) + ")";
  return Real(std::move(e));
}

Real Real::parse(std::string_view token, int precision_bits) {
  std::string t = trim(token);
  if (t.empty()) throw ParseError("empty real token");
  std::string lower = t;
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  bool negate = false;
  std::string body = lower;
  if (body[0] == '-' && body.size() > 1 && std::isalpha(static_cast<unsigned char>(body[1]))) {
    negate = true;
    body = body.substr(1);
  }
  Real out;
  std::vector<std::string> args;
  try {
    if (body == "golden") {
      out = golden();
    } else if (call_args(body, "sqrt", args) && args.size() == 1) {
      out = from_surd(0, 1, parse_int64(args[0]));
    } else if (call_args(body, "surd", args) && args.size() == 3) {
      Real a = parse(args[0]);
      Real b = parse(args[1]);
      if (!a.is_rational() || !b.is_rational()) throw ParseError("surd coefficients must be rational");
      out = from_surd(a.rational(), b.rational(), parse_int64(args[2]));
    } else if (call_args(body, "float", args) && args.size() == 2) {
      char* end = nullptr;
      double x = std::strtod(args[0].c_str(), &end);
      if (end == args[0].c_str() || *end != '\0') throw ParseError("bad float literal '" + args[0] + "'");
      out = from_double(x, static_cast<int>(parse_int64(args[1])));
    } else if (body.rfind("f:", 0) == 0) {
      std::string lit = body.substr(2);
      char* end = nullptr;
      double x = std::strtod(lit.c_str(), &end);
      if (end == lit.c_str() || *end != '\0') throw ParseError("bad float literal '" + lit + "'");
      out = from_double(x, precision_bits);
    } else if (call_args(body, "superliouville", args) && args.size() == 2) {
      out = super_liouville(static_cast<int>(parse_int64(args[0])), parse_int64(args[1]));
    } else if (call_args(body, "enclosure", args) && args.size() == 2) {
      Real c = parse(args[0]);
      if (!c.is_rational()) throw ParseError("enclosure center must be rational");
      char* end = nullptr;
      double r = std::strtod(args[1].c_str(), &end);
      if (end == args[1].c_str() || *end != '\0') throw ParseError("bad enclosure radius '" + args[1] + "'");
      out = from_enclosure(Enclosure{c.rational(), r, ""});
    } else if (!parse_number(lower, out)) {
      throw ParseError("unrecognized real token '" + t + "'");
    }
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError("invalid real token '" + t + "': " + e.what());
  } catch (const std::exception& e) {
    throw ParseError("invalid real token '" + t + "': " + e.what());
  }
  return negate ? -out : out;
}

const Rational& Real::rational() const {
  if (kind() != Kind::rational) throw DomainError("real is not rational");
  return std::get<Rational>(v_);
}

const QuadraticSurd& Real::surd() const {
  if (kind() != Kind::surd) throw DomainError("real is not a quadratic surd");
  return std::get<QuadraticSurd>(v_);
}

const Enclosure& Real::enclosure() const {
  if (kind() != Kind::enclosure) throw DomainError("real is not an enclosure");
  return std::get<Enclosure>(v_);
}

std::string Real::canonical() const {
  switch (kind()) {
    case Kind::rational:
      return to_string(rational());
    case Kind::surd: {
      const auto& s = surd();
      if (s.d == 5 && s.a == Rational(1, 2) && s.b == Rational(1, 2)) return "golden";
      if (s.a == 0 && s.b == 1) return "sqrt(" + std::to_string(s.d) + ")";
      if (s.a == 0 && s.b == -1) return "-sqrt(" + std::to_string(s.d) + ")";
      return "surd(" + to_string(s.a) + "," + to_string(s.b) + "," + std::to_string(s.d) + ")";
    }
    case Kind::enclosure: {
      const auto& e = enclosure();
      if (!e.origin.empty()) return e.origin;
      return "enclosure(" + to_string(e.center) + "," + format_double(e.log2_radius) + ")";
    }
  }
  return {};
}

double Real::to_double() const {
  switch (kind()) {
    case Kind::rational:
      return rational().convert_to<double>();
    case Kind::surd: {
      SurdParts p = parts_of(surd());
      return surd_value(p.P, p.Q, p.R, p.d);
    }
    case Kind::enclosure:
      return enclosure().center.convert_to<double>();
  }
  return 0.0;
}

Real Real::operator-() const {
  switch (kind()) {
    case Kind::rational:
      return Real(Rational(-rational()));
    case Kind::surd: {
      const auto& s = surd();
      return Real(QuadraticSurd{-s.a, -s.b, s.d});
    }
    case Kind::enclosure: {
      Enclosure e = enclosure();
      e.center = -e.center;
      if (!e.origin.empty()) e.origin = e.origin[0] == '-' ? e.origin.substr(1) : "-" + e.origin;
      return Real(std::move(e));
    }
  }
  return {};
}

Real operator+(const Real& x, const Real& y) {
  using K = Real::Kind;
  if (x.kind() == K::rational && y.kind() == K::rational) return Real(Rational(x.rational() + y.rational()));
  if (x.kind() == K::surd && y.kind() == K::rational) {
    const auto& s = x.surd();
    return Real(QuadraticSurd{s.a + y.rational(), s.b, s.d});
  }
  if (x.kind() == K::rational && y.kind() == K::surd) return y + x;
  if (x.kind() == K::surd && y.kind() == K::surd && x.surd().d == y.surd().d) {
    return Real::from_surd(x.surd().a + y.surd().a, x.surd().b + y.surd().b, x.surd().d);
  }
  Enclosure ex = x.to_enclosure(kSurdEnclosureBits);
  Enclosure ey = y.to_enclosure(kSurdEnclosureBits);
  Enclosure sum;
  sum.center = ex.center + ey.center;
  sum.log2_radius = log2_add(ex.log2_radius, ey.log2_radius);
  return Real::from_enclosure(std::move(sum));
}

Real Real::scaled(std::int64_t n) const {
  if (n == 0) return Real();
  if (n == 1) return *this;
  switch (kind()) {
    case Kind::rational:
      return Real(Rational(rational() * n));
    case Kind::surd: {
      const auto& s = surd();
      return Real(QuadraticSurd{s.a * n, s.b * n, s.d});
    }
    case Kind::enclosure: {
      Enclosure e;
      e.center = enclosure().center * n;
      e.log2_radius = enclosure().log2_radius + std::log2(std::abs(static_cast<double>(n)));
      return Real(std::move(e));
    }
  }
  return {};
}

Residue Real::residue() const {
  Residue out;
  switch (kind()) {
    case Kind::rational: {
      const Rational& r = rational();
      BigInt num = mp::numerator(r);
      BigInt den = mp::denominator(r);
      BigInt rem = num - floor_div(num, den) * den;
      if (2 * rem > den) rem -= den;
      out.exact_zero = rem == 0;
      out.offset = Rational(rem, den).convert_to<double>();
      out.error = std::abs(out.offset) * std::numeric_limits<double>::epsilon();
      return out;
    }
    case Kind::surd: {
      SurdParts p = parts_of(surd());
      BigInt f = surd_floor(p.P, p.Q, p.R, p.d);
      BigInt P1 = p.P - f * p.R;
      if (surd_sign(2 * P1 - p.R, 2 * p.Q, p.d) > 0) P1 -= p.R;
      out.offset = surd_value(P1, p.Q, p.R, p.d);
      out.error = 16.0 * std::abs(out.offset) * std::numeric_limits<double>::epsilon();
      return out;
    }
    case Kind::enclosure: {
      const Enclosure& e = enclosure();
      Residue c = Real(Rational(e.center)).residue();
      out.offset = c.offset;
      out.error = c.error + std::exp2(e.log2_radius);
      return out;
    }
  }
  return out;
}

BigInt Real::floor() const {
  switch (kind()) {
    case Kind::rational:
      return floor_div(mp::numerator(rational()), mp::denominator(rational()));
    case Kind::surd: {
      SurdParts p = parts_of(surd());
      return surd_floor(p.P, p.Q, p.R, p.d);
    }
    case Kind::enclosure: {
      Rational lo, hi;
      bracket(lo, hi);
      BigInt flo = floor_div(mp::numerator(lo), mp::denominator(lo));
      BigInt fhi = floor_div(mp::numerator(hi), mp::denominator(hi));
      if (flo != fhi) throw PrecisionExhausted("enclosure " + canonical() + " straddles an integer");
      return flo;
    }
  }
  return 0;
}

Real Real::frac() const {
  if (kind() == Kind::enclosure) {
    const Enclosure& e = enclosure();
    BigInt f = floor_div(mp::numerator(e.center), mp::denominator(e.center));
    if (f == 0) return *this;
    Enclosure r = e;
    r.center -= Rational(f);
    r.origin.clear();
    return Real(std::move(r));
  }
  BigInt f = floor();
  if (f == 0) return *this;
  return *this + Real(Rational(-f));
}

bool Real::is_integer() const {
  switch (kind()) {
    case Kind::rational:
      return mp::denominator(rational()) == 1;
    case Kind::surd:
      return false;
    case Kind::enclosure:
      throw PrecisionExhausted("integrality of an enclosure is undecidable");
  }
  return false;
}

int Real::sign() const {
  switch (kind()) {
    case Kind::rational:
      return rational().sign();
    case Kind::surd: {
      SurdParts p = parts_of(surd());
      return surd_sign(p.P, p.Q, p.d);
    }
    case Kind::enclosure: {
      const Enclosure& e = enclosure();
      if (mp::abs(e.center) > radius_bound(e.log2_radius)) return e.center.sign();
      throw PrecisionExhausted("sign of enclosure " + canonical() + " is undecided");
    }
  }
  return 0;
}

Enclosure Real::to_enclosure(int bits) const {
  switch (kind()) {
    case Kind::rational:
      return Enclosure{rational(), -std::numeric_limits<double>::infinity(), ""};
    case Kind::surd: {
      SurdParts p = parts_of(surd());
      BigInt scale = BigInt(1) << bits;
      BigInt f = surd_floor(p.P * scale, p.Q * scale, p.R, p.d);
      return Enclosure{Rational(f, scale), static_cast<double>(-bits), ""};
    }
    case Kind::enclosure:
      return enclosure();
  }
  return {};
}

void Real::bracket(Rational& lo, Rational& hi, int bits) const {
  Enclosure e = to_enclosure(bits);
  Rational r = radius_bound(e.log2_radius);
  lo = e.center - r;
  hi = e.center + r;
}

ResonantObstruction::ResonantObstruction(const std::string& stage_name, std::vector<int> index, double data,
                                         double divisor)
    : Error([&] {
        std::string m = stage_name + ": resonant mode (";
        for (std::size_t i = 0; i < index.size(); ++i) m += (i ? "," : "") + std::to_string(index[i]);
        char buf[128];
        std::snprintf(buf, sizeof buf, ") with |data| = %.3g and |divisor| = %.3g", data, divisor);
        return m + buf;
      }()),
      stage(stage_name),
      mode(std::move(index)),
      data_abs(data),
      divisor_abs(divisor) {}

}  // namespace tlab
