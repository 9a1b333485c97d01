#pragma once

// Theta/wild classification, continued fractions, (H)'_S and Kazama margins,
// norm-equivalence constants, super-Liouville constructors, resonance search.

#include "toroidal_lab/group_core.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace tlab {

struct ContinuedFraction {
  std::vector<BigInt> quotients;  // a_0, a_1, ...
  std::vector<BigInt> p;          // convergent numerators
  std::vector<BigInt> q;          // convergent denominators
  bool terminated = false;        // expansion ended: the input is rational
  bool exhausted = false;         // an enclosure could not certify the next quotient
};

// Throws PrecisionExhausted when an enclosure cannot certify `depth` quotients.
ContinuedFraction continued_fraction(const Real& x, int depth);
// Same, but returns the certified prefix with `exhausted` set instead of throwing.
ContinuedFraction continued_fraction_prefix(const Real& x, int depth);

enum class DistanceKind { lattice2d, fiber };

// Distances are stored in log form so that super-Liouville witnesses
// (d ~ 10^{-10^10}) remain representable.
struct DistanceEntry {
  std::int64_t n = 0;
  double log_value = 0.0;  // -inf for a certified zero
  double log_error = -std::numeric_limits<double>::infinity();
  bool exact_zero = false;

  double value() const { return std::exp(log_value); }
  double log_upper() const;
  double log_lower() const;
};

struct DistanceSequence {
  DistanceKind kind = DistanceKind::fiber;
  std::vector<DistanceEntry> entries;
  int precision_bits = 53;
};

DistanceSequence distance_sequence_lattice(const Real& p, const Real& q, std::int64_t N, int precision_bits = 53);
DistanceSequence distance_sequence_fiber(const Real& q, const Real& theta2, std::int64_t N, int precision_bits = 53);
DistanceSequence distance_sequence_from_values(DistanceKind kind, const std::vector<double>& d);

enum class Verdict { theta_evidence, wild_witness, inconclusive };
std::string to_string(Verdict v);

struct ClassificationReport {
  Verdict verdict = Verdict::inconclusive;
  double A = 0.0;  // theta evidence
  double delta = 0.0;
  double log_A = 0.0;
  std::optional<std::int64_t> witness_n;
  double witness_log_margin = 0.0;  // n log(delta0) - log(d_n upper)
  bool resonant = false;
  double r = 0.0;
  std::int64_t N = 0;
  double delta0 = 0.25;
  DistanceSequence sequence;
};

// A single d_n < delta0^n is a witness, so delta0 must sit below the early distances of
// badly approximable inputs: golden has d_1 = 0.382, d_2 = 0.236.
ClassificationReport exp_bound_scan(const DistanceSequence& d, double delta0 = 0.25);
// min (log d_n)/n over entries with n in [n_lo, n_hi] and d_n > 0.
double exponent_statistic(const DistanceSequence& d, std::int64_t n_lo, std::int64_t n_hi);

double hs_margin(cplx tau, double q, double theta2, double a, int box);
double kazama_margin(cplx tau, const Real& p, const Real& q, double a, int box);

struct NormConstants {
  double k_lower = 0.0;
  double k_upper = 0.0;
};
NormConstants norm_equiv_constants(cplx tau);

struct LiouvilleWitness {
  std::int64_t n = 0;
  double log_distance_upper = 0.0;  // natural log
  bool certified = false;
};

struct SuperLiouville {
  int depth = 0;
  std::int64_t base = 0;
  std::vector<std::int64_t> exponents;
  Real value;
  bool finite_sum_rational = true;  // always: wildness is only witnessed
  bool degenerate = false;          // no witness could be certified
  std::vector<LiouvilleWitness> witnesses;
};

SuperLiouville make_super_liouville(int depth, std::int64_t base);
// The certified witnesses as a distance sequence for exp_bound_scan.
DistanceSequence witness_sequence(const SuperLiouville& s);

std::vector<std::array<int, 3>> resonance_search(const GroupParams& params, const Real& theta1,
                                                 const Real& theta2, int box, double tol);

}  // namespace tlab
