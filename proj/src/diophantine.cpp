#include "toroidal_lab/diophantine.hpp"

#include "toroidal_lab/errors.hpp"

#include <algorithm>

namespace tlab {

namespace mp = boost::multiprecision;

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void push_quotient(ContinuedFraction& cf, const BigInt& a) {
  std::size_t k = cf.quotients.size();
  cf.quotients.push_back(a);
  // p_{-1} = 1, p_{-2} = 0, q_{-1} = 0, q_{-2} = 1
  auto p_at = [&](std::ptrdiff_t i) { return i >= 0 ? cf.p[i] : BigInt(i == -1 ? 1 : 0); };
  auto q_at = [&](std::ptrdiff_t i) { return i >= 0 ? cf.q[i] : BigInt(i == -1 ? 0 : 1); };
  const auto K = static_cast<std::ptrdiff_t>(k);
  const BigInt p1 = p_at(K - 1), p2 = p_at(K - 2);
  const BigInt q1 = q_at(K - 1), q2 = q_at(K - 2);
  cf.p.push_back(a * p1 + p2);
  cf.q.push_back(a * q1 + q2);
}

double safe_log(double x) { return x > 0.0 ? std::log(x) : kNegInf; }

DistanceEntry entry_from(std::int64_t n, double value, double error, bool exact_zero) {
  DistanceEntry e;
  e.n = n;
  e.exact_zero = exact_zero;
  e.log_value = exact_zero ? kNegInf : safe_log(value);
  e.log_error = safe_log(error);
  return e;
}

}  // namespace

ContinuedFraction continued_fraction_prefix(const Real& x, int depth) {
  if (depth < 0) throw DomainError("continued fraction depth must be non-negative");
  ContinuedFraction cf;
  const std::size_t want = static_cast<std::size_t>(depth) + 1;
  switch (x.kind()) {
    case Real::Kind::rational: {
      BigInt n = mp::numerator(x.rational());
      BigInt d = mp::denominator(x.rational());
      while (cf.quotients.size() < want) {
        BigInt a = floor_div(n, d);
        push_quotient(cf, a);
        BigInt r = n - a * d;
        if (r == 0) {
          cf.terminated = true;
          break;
        }
        n = d;
        d = r;
      }
      break;
    }
    case Real::Kind::surd: {
      // x = (P + Q sqrt(d)) / R
      const QuadraticSurd& s = x.surd();
      BigInt ad = mp::denominator(s.a), bd = mp::denominator(s.b);
      BigInt R = mp::lcm(ad, bd);
      BigInt P = mp::numerator(s.a) * (R / ad);
      BigInt Q = mp::numerator(s.b) * (R / bd);
      while (cf.quotients.size() < want) {
        BigInt a = Real::from_surd(Rational(P, R), Rational(Q, R), s.d).floor();
        push_quotient(cf, a);
        BigInt P1 = P - a * R;
        // 1 / ((P1 + Q sqrt d)/R) = R (P1 - Q sqrt d) / (P1^2 - Q^2 d)
        BigInt nP = R * P1;
        BigInt nQ = -R * Q;
        BigInt nR = P1 * P1 - Q * Q * s.d;
        if (nR < 0) {
          nP = -nP;
          nQ = -nQ;
          nR = -nR;
        }
        BigInt g = mp::gcd(mp::gcd(mp::abs(nP), mp::abs(nQ)), nR);
        P = nP / g;
        Q = nQ / g;
        R = nR / g;
      }
      break;
    }
    case Real::Kind::enclosure: {
      Rational lo, hi;
      x.bracket(lo, hi);
      while (cf.quotients.size() < want) {
        BigInt alo = floor_div(mp::numerator(lo), mp::denominator(lo));
        BigInt ahi = floor_div(mp::numerator(hi), mp::denominator(hi));
        if (alo != ahi) {
          cf.exhausted = true;
          break;
        }
        Rational flo = lo - Rational(alo);
        Rational fhi = hi - Rational(alo);
        if (flo == 0) {
          if (fhi == 0) {
            push_quotient(cf, alo);
            cf.terminated = true;
          } else {
            cf.exhausted = true;  // cannot tell whether the expansion stops here
          }
          break;
        }
        push_quotient(cf, alo);
        lo = 1 / fhi;
        hi = 1 / flo;
      }
      break;
    }
  }
  return cf;
}

ContinuedFraction continued_fraction(const Real& x, int depth) {
  ContinuedFraction cf = continued_fraction_prefix(x, depth);
  if (cf.exhausted) {
    throw PrecisionExhausted("precision of " + x.canonical() + " certifies only " +
                                 std::to_string(cf.quotients.size()) + " partial quotients",
                             static_cast<int>(cf.quotients.size()));
  }
  return cf;
}

double DistanceEntry::log_upper() const {
  if (log_error == kNegInf) return log_value;
  if (log_value == kNegInf) return log_error;
  double hi = std::max(log_value, log_error);
  double lo = std::min(log_value, log_error);
  return hi + std::log1p(std::exp(lo - hi));
}

double DistanceEntry::log_lower() const {
  if (log_error == kNegInf) return log_value;
  if (log_error >= log_value) return kNegInf;
  return log_value + std::log1p(-std::exp(log_error - log_value));
}

DistanceSequence distance_sequence_fiber(const Real& q, const Real& theta2, std::int64_t N, int precision_bits) {
  if (N < 1) throw DomainError("scan depth N must be at least 1");
  DistanceSequence seq;
  seq.kind = DistanceKind::fiber;
  seq.precision_bits = precision_bits;
  seq.entries.reserve(static_cast<std::size_t>(N));
  const Real shift = -theta2;
  for (std::int64_t n = 1; n <= N; ++n) {
    Residue r = q.affine(n, shift).residue();
    seq.entries.push_back(entry_from(n, r.distance(), r.error, r.exact_zero));
  }
  return seq;
}

DistanceSequence distance_sequence_lattice(const Real& p, const Real& q, std::int64_t N, int precision_bits) {
  if (N < 1) throw DomainError("scan depth N must be at least 1");
  DistanceSequence seq;
  seq.kind = DistanceKind::lattice2d;
  seq.precision_bits = precision_bits;
  seq.entries.reserve(static_cast<std::size_t>(N));
  for (std::int64_t n = 1; n <= N; ++n) {
    Residue rp = p.scaled(n).residue();
    Residue rq = q.scaled(n).residue();
    double d = std::hypot(rp.offset, rq.offset);
    seq.entries.push_back(entry_from(n, d, rp.error + rq.error, rp.exact_zero && rq.exact_zero));
  }
  return seq;
}

DistanceSequence distance_sequence_from_values(DistanceKind kind, const std::vector<double>& d) {
  DistanceSequence seq;
  seq.kind = kind;
  for (std::size_t i = 0; i < d.size(); ++i) {
    seq.entries.push_back(entry_from(static_cast<std::int64_t>(i) + 1, d[i], 0.0, d[i] == 0.0));
  }
  return seq;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::theta_evidence:
      return "theta-evidence";
    case Verdict::wild_witness:
      return "wild-witness";
    case Verdict::inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

double exponent_statistic(const DistanceSequence& d, std::int64_t n_lo, std::int64_t n_hi) {
  double r = std::numeric_limits<double>::infinity();
  for (const auto& e : d.entries) {
    if (e.n < n_lo || e.n > n_hi || e.exact_zero || e.log_value == kNegInf) continue;
    r = std::min(r, e.log_value / static_cast<double>(e.n));
  }
  return r;
}

ClassificationReport exp_bound_scan(const DistanceSequence& d, double delta0) {
  if (d.entries.empty()) throw DomainError("distance sequence is empty");
  if (!(delta0 > 0.0 && delta0 < 1.0)) throw DomainError("delta0 must lie in (0, 1)");
  ClassificationReport rep;
  rep.sequence = d;
  rep.delta0 = delta0;
  rep.N = d.entries.back().n;
  rep.r = exponent_statistic(d, std::numeric_limits<std::int64_t>::min(), std::numeric_limits<std::int64_t>::max());
  const double ld0 = std::log(delta0);
  bool uncertain = false;
  for (const auto& e : d.entries) {
    const double nd = static_cast<double>(e.n);
    if (e.exact_zero) {
      rep.verdict = Verdict::wild_witness;
      rep.resonant = true;
      rep.witness_n = e.n;
      rep.witness_log_margin = std::numeric_limits<double>::infinity();
      return rep;
    }
    if (e.log_upper() < nd * ld0) {
      if (!rep.witness_n) {
        rep.witness_n = e.n;
        rep.witness_log_margin = nd * ld0 - e.log_upper();
      }
    } else if (e.log_lower() <= nd * ld0) {
      uncertain = true;
    }
  }
  if (rep.witness_n) {
    rep.verdict = Verdict::wild_witness;
    return rep;
  }
  if (uncertain) {
    rep.verdict = Verdict::inconclusive;
    return rep;
  }
  rep.verdict = Verdict::theta_evidence;
  rep.delta = std::max(delta0, std::exp(rep.r));
  const double ld = std::log(rep.delta);
  double logA = std::numeric_limits<double>::infinity();
  for (const auto& e : d.entries) logA = std::min(logA, e.log_lower() - static_cast<double>(e.n) * ld);
  rep.log_A = logA;
  rep.A = std::exp(logA);
  return rep;
}

double hs_margin(cplx tau, double q, double theta2, double a, int box) {
  if (box < 1 || !(a > 0.0)) throw DomainError("hs_margin needs box >= 1 and a > 0");
  double best = std::numeric_limits<double>::infinity();
  for (int m1 = -box; m1 <= box; ++m1) {
    for (int m2 = -box; m2 <= box; ++m2) {
      if (m1 == 0 && m2 == 0) continue;
      const double w = std::exp(a * std::max(std::abs(m1), std::abs(m2)));
      const cplx base = tau * static_cast<double>(m1) + (q * m2 - theta2);
      for (int m3 = -box; m3 <= box; ++m3) {
        best = std::min(best, std::abs(base - static_cast<double>(m3)) * w);
      }
    }
  }
  return best;
}

double kazama_margin(cplx tau, const Real& p, const Real& q, double a, int box) {
  if (box < 1 || !(a > 0.0)) throw DomainError("kazama_margin needs box >= 1 and a > 0");
  const double pd = p.to_double();
  const double qd = q.to_double();
  const bool exact = p.is_exact() && q.is_exact();
  double best = 0.0;
  for (int m1 = -box; m1 <= box; ++m1) {
    for (int m2 = -box; m2 <= box; ++m2) {
      const double w = std::exp(-a * std::max(std::abs(m1), std::abs(m2)));
      for (int m3 = -box; m3 <= box; ++m3) {
        if (m1 == 0 && m2 == 0 && m3 == 0) continue;
        const double re_coeff = pd * m2 - m1;
        const double rest = m3 - qd * m2;
        const double den = std::abs(tau * re_coeff + rest);
        if (den < 1e-9) {
          bool zero = den == 0.0;
          if (exact) {
            zero = p.affine(m2, Real::from_int(-m1)).sign() == 0 && q.affine(-m2, Real::from_int(m3)).sign() == 0;
          }
          if (zero) {
            throw ResonanceError("Kazama denominator vanishes at m = (" + std::to_string(m1) + "," +
                                     std::to_string(m2) + "," + std::to_string(m3) + ")",
                                 {m1, m2, m3});
          }
        }
        best = std::max(best, w / den);
      }
    }
  }
  return best;
}

NormConstants norm_equiv_constants(cplx tau) {
  if (!(tau.imag() > 0.0)) throw DomainError("Im(tau) must be positive");
  // M = [[Re tau, 1], [Im tau, 0]]; M^T M has trace |tau|^2 + 1 and determinant (Im tau)^2.
  const double t = std::norm(tau) + 1.0;
  const double det = tau.imag() * tau.imag();
  const double disc = std::sqrt(std::max(0.0, (t - 2.0 * tau.imag()) * (t + 2.0 * tau.imag())));
  const double big = 0.5 * (t + disc);
  return {std::sqrt(det / big), std::sqrt(big)};
}

SuperLiouville make_super_liouville(int depth, std::int64_t base) {
  SuperLiouville s;
  s.depth = depth;
  s.base = base;
  s.value = Real::super_liouville(depth, base);  // validates and raises on overflow
  s.exponents.push_back(1);
  for (int j = 1; j < depth; ++j) {
    BigInt next = 1;
    for (std::int64_t i = 0; i < s.exponents.back(); ++i) next *= base;
    s.exponents.push_back(static_cast<std::int64_t>(next));
  }
  // k/64 <= log2(base): k is the bit length of base^64 minus one.
  BigInt b64 = 1;
  for (int i = 0; i < 64; ++i) b64 *= base;
  const auto k = static_cast<std::int64_t>(mp::msb(b64));
  const double lnb = std::log(static_cast<double>(base));
  for (int j = 0; j + 1 < depth; ++j) {
    LiouvilleWitness w;
    w.n = s.exponents[j + 1];  // n_j = base^{a_j}
    const std::int64_t gap = s.exponents[j + 1] - s.exponents[j];
    // dist(n_j q, Z) <= tail = sum_{i>j} base^{a_j - a_i} <= 2 base^{-gap} (exactly base^{-gap} for the last term)
    const bool last = j + 2 == depth;
    w.log_distance_upper = (last ? 0.0 : std::log(2.0)) - static_cast<double>(gap) * lnb;
    // certify tail <= 1/2 and tail < 2^{-n_j}: (n_j + 2) * 64 <= gap * k suffices for both
    BigInt lhs = (BigInt(w.n) + 2) * 64;
    BigInt rhs = BigInt(gap) * k;
    w.certified = lhs <= rhs;
    s.witnesses.push_back(w);
  }
  s.degenerate = std::none_of(s.witnesses.begin(), s.witnesses.end(), [](const auto& w) { return w.certified; });
  return s;
}

DistanceSequence witness_sequence(const SuperLiouville& s) {
  DistanceSequence seq;
  seq.kind = DistanceKind::fiber;
  for (const auto& w : s.witnesses) {
    if (!w.certified) continue;
    DistanceEntry e;
    e.n = w.n;
    e.log_value = w.log_distance_upper;
    seq.entries.push_back(e);
  }
  return seq;
}

std::vector<std::array<int, 3>> resonance_search(const GroupParams& params, const Real& theta1,
                                                 const Real& theta2, int box, double tol) {
  if (box < 1) throw DomainError("resonance_search needs box >= 1");
  const double p = params.p.to_double();
  const double q = params.q.to_double();
  const double t1 = theta1.to_double();
  const double t2 = theta2.to_double();
  std::vector<std::array<int, 3>> out;
  for (int s1 = -box; s1 <= box; ++s1) {
    for (int s2 = -box; s2 <= box; ++s2) {
      const double x = s1 - p * s2 + t1;
      if (!(std::abs(params.tau.imag() * x) < tol)) continue;
      for (int s3 = -box; s3 <= box; ++s3) {
        if (s1 == 0 && s2 == 0 && s3 == 0) continue;
        if (std::abs(params.tau.real() * x + s2 * q + s3 - t2) < tol) out.push_back({s1, s2, s3});
      }
    }
  }
  return out;
}

}  // namespace tlab
