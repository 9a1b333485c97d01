#include "toroidal_lab/bundle_arith.hpp"

#include "toroidal_lab/errors.hpp"

#include <limits>

namespace tlab {

namespace mp = boost::multiprecision;

namespace {

BigInt mod_pos(const BigInt& a, const BigInt& m) {
  BigInt r = a % m;
  if (r < 0) r += m;
  return r;
}

// Inverse of a modulo m (gcd(a, m) = 1, m >= 1).
BigInt mod_inverse(const BigInt& a, const BigInt& m) {
  if (m == 1) return 0;
  BigInt r0 = m, r1 = mod_pos(a, m);
  BigInt s0 = 0, s1 = 1;
  while (r1 != 0) {
    BigInt q = r0 / r1;
    BigInt r2 = r0 - q * r1;
    r0 = r1;
    r1 = r2;
    BigInt s2 = s0 - q * s1;
    s0 = s1;
    s1 = s2;
  }
  return mod_pos(s0, m);
}

IntegerSolutions make_empty() { return {}; }

IntegerSolutions make_single(BigInt n) {
  IntegerSolutions s;
  s.kind = IntegerSolutions::Kind::single;
  s.residue = std::move(n);
  return s;
}

IntegerSolutions make_progression(const BigInt& r, const BigInt& period) {
  IntegerSolutions s;
  s.kind = IntegerSolutions::Kind::progression;
  s.period = period;
  s.residue = mod_pos(r, period);
  return s;
}

std::optional<std::int64_t> to_int64(const std::optional<BigInt>& v) {
  if (!v) return std::nullopt;
  if (*v > std::numeric_limits<std::int64_t>::max() || *v < std::numeric_limits<std::int64_t>::min()) {
    return std::nullopt;
  }
  return static_cast<std::int64_t>(*v);
}

}  // namespace

Character::Character(Real phase1, Real phase2, CharacterBase base)
    : phase1_(phase1.frac()), phase2_(phase2.frac()), base_(base) {}

Character char_tensor(const Character& a, const Character& b) {
  if (a.base() != b.base()) throw BaseMismatch("characters live on different lattices");
  return Character(a.phase1() + b.phase1(), a.phase2() + b.phase2(), a.base());
}

Character twist_character(const Character& F, const Character& E, std::int64_t n) {
  if (F.base() != E.base()) throw BaseMismatch("characters live on different lattices");
  return Character(E.phase1() + F.phase1().scaled(n), E.phase2() + F.phase2().scaled(n), E.base());
}

Triviality is_trivial_flat(const Character& c, double tol) {
  Triviality t;
  t.flag = c.exact() ? TrivialityFlag::exact : TrivialityFlag::numerical;
  auto zero = [tol](const Real& phase) {
    if (phase.is_rational()) return phase.rational() == 0;
    if (phase.kind() == Real::Kind::surd) return false;
    return phase.residue().distance() < tol;
  };
  t.trivial = zero(c.phase1()) && zero(c.phase2());
  return t;
}

int h0_flat_elliptic(const Character& c) { return is_trivial_flat(c).trivial ? 1 : 0; }

bool IntegerSolutions::contains(const BigInt& n) const {
  switch (kind) {
    case Kind::empty:
      return false;
    case Kind::single:
      return n == residue;
    case Kind::progression:
      return mod_pos(n - residue, period) == 0;
  }
  return false;
}

std::optional<BigInt> IntegerSolutions::nearest_to_zero() const {
  switch (kind) {
    case Kind::empty:
      return std::nullopt;
    case Kind::single:
      return residue;
    case Kind::progression: {
      BigInt r = mod_pos(residue, period);
      BigInt neg = r - period;
      if (r == 0) return BigInt(0);
      return -neg <= r ? neg : r;
    }
  }
  return std::nullopt;
}

std::optional<BigInt> IntegerSolutions::first_at_least(const BigInt& lo) const {
  switch (kind) {
    case Kind::empty:
      return std::nullopt;
    case Kind::single:
      if (residue >= lo) return residue;
      return std::nullopt;
    case Kind::progression:
      return lo + mod_pos(residue - lo, period);
  }
  return std::nullopt;
}

IntegerSolutions integer_solutions(const Real& x, const Real& y) {
  using K = Real::Kind;
  if (!x.is_exact() || !y.is_exact()) throw PrecisionExhausted("integrality over all n needs exact inputs");
  if (x.kind() == K::rational && y.kind() == K::rational) {
    BigInt a = mp::numerator(x.rational()), b = mp::denominator(x.rational());
    BigInt c = mp::numerator(y.rational()), e = mp::denominator(y.rational());
    // n a/b + c/e in Z  <=>  (a e) n = -(c b)  (mod b e)
    BigInt M = b * e;
    BigInt A = mod_pos(a * e, M);
    BigInt C = mod_pos(-(c * b), M);
    BigInt g = A == 0 ? M : BigInt(mp::gcd(A, M));
    if (C % g != 0) return make_empty();
    BigInt Mg = M / g;
    BigInt n0 = mod_pos((C / g) * mod_inverse(A / g, Mg), Mg);
    return make_progression(n0, Mg);
  }
  if (x.kind() == K::rational) return make_empty();  // y irrational, n x rational
  const QuadraticSurd& sx = x.surd();
  if (y.kind() == K::rational) {
    // irrational part n*b vanishes only at n = 0
    return mp::denominator(y.rational()) == 1 ? make_single(0) : make_empty();
  }
  const QuadraticSurd& sy = y.surd();
  if (sy.d != sx.d) return make_empty();  // 1, sqrt(d1), sqrt(d2) independent over Q
  Rational n = -sy.b / sx.b;
  if (mp::denominator(n) != 1) return make_empty();
  Rational rational_part = n * sx.a + sy.a;
  if (mp::denominator(rational_part) != 1) return make_empty();
  return make_single(mp::numerator(n));
}

IntegerSolutions intersect(const IntegerSolutions& a, const IntegerSolutions& b) {
  using K = IntegerSolutions::Kind;
  if (a.kind == K::empty || b.kind == K::empty) return make_empty();
  if (a.kind == K::single) return b.contains(a.residue) ? a : make_empty();
  if (b.kind == K::single) return a.contains(b.residue) ? b : make_empty();
  // n = r1 (mod m1), n = r2 (mod m2)
  BigInt g = mp::gcd(a.period, b.period);
  BigInt diff = b.residue - a.residue;
  if (mod_pos(diff, g) != 0) return make_empty();
  BigInt m1g = a.period / g;
  BigInt m2g = b.period / g;
  BigInt t = mod_pos((diff / g) * mod_inverse(m1g, m2g), m2g);
  BigInt l = a.period * m2g;
  return make_progression(a.residue + a.period * t, l);
}

AssumptionReport thm_assumption_check(const GroupParams& params, const Real& theta1, const Real& theta2,
                                      std::int64_t n_box) {
  if (n_box < 1) throw DomainError("n_box must be at least 1");
  AssumptionReport rep;
  rep.n_box = n_box;
  if (params.p.is_exact() && params.q.is_exact() && theta1.is_exact() && theta2.is_exact()) {
    IntegerSolutions s = intersect(integer_solutions(params.p, theta1), integer_solutions(params.q, theta2));
    rep.pass = s.kind == IntegerSolutions::Kind::empty;
    if (!rep.pass) rep.witness = to_int64(s.nearest_to_zero());
    return rep;
  }
  rep.scanned = true;
  constexpr double tol = 1e-12;
  for (std::int64_t k = 0; k <= 2 * n_box; ++k) {
    // 0, -1, 1, -2, 2, ...
    std::int64_t n = (k % 2 == 1) ? -(k + 1) / 2 : k / 2;
    if (params.p.affine(n, theta1).residue().distance() < tol &&
        params.q.affine(n, theta2).residue().distance() < tol) {
      rep.pass = false;
      rep.witness = n;
      return rep;
    }
  }
  return rep;
}

int H0Spectrum::total() const {
  int t = 0;
  for (const auto& e : entries) t += e.dim;
  return t;
}

H0Spectrum h0_spectrum(const Character& F, const Character& E, std::int64_t n_lo, std::int64_t n_hi) {
  H0Spectrum s;
  for (std::int64_t n = n_lo; n <= n_hi; ++n) {
    Character c = twist_character(F, E, n);
    Triviality t = is_trivial_flat(c);
    s.entries.push_back({n, t.trivial ? 1 : 0, c, t.flag == TrivialityFlag::numerical});
  }
  return s;
}

NeighborhoodVerdict neighborhood_vanishing_check(const Character& E_on_W, const Character& N_WZ,
                                                 std::int64_t n_max) {
  if (n_max < 0) throw DomainError("n_max must be non-negative");
  NeighborhoodVerdict v;
  for (std::int64_t n = 0; n <= n_max; ++n) {
    if (is_trivial_flat(twist_character(N_WZ, E_on_W, -n)).trivial) {
      v.holds = false;
      v.first_failure = n;
      break;
    }
  }
  if (E_on_W.exact() && N_WZ.exact()) {
    IntegerSolutions s = intersect(integer_solutions(-N_WZ.phase1(), E_on_W.phase1()),
                                   integer_solutions(-N_WZ.phase2(), E_on_W.phase2()));
    v.all_n = !s.first_at_least(0).has_value();
  }
  return v;
}

}  // namespace tlab
