#pragma once

// Parameters (tau, p, q), the deck automorphism sigma(xi, eta) = (lambda xi, mu eta)
// of the covering (C*)^2 -> X, and the fundamental slabs D_n.

#include "toroidal_lab/real.hpp"

#include <complex>
#include <cstdint>
#include <utility>

namespace tlab {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTwoPi = 2.0 * kPi;

struct GroupParams {
  cplx tau{0.0, 1.0};
  Real p;
  Real q;
  int precision_bits = 53;

  GroupParams() = default;
  GroupParams(cplx tau_, Real p_, Real q_, int bits = 53);
};

// Phases are kept in turns (fractions of a full turn) reduced to [0, 1); the
// reductions of q and theta2 are done exactly before any trigonometry.
struct DerivedConstants {
  cplx lambda;
  cplx mu;
  cplx nu;
  double log_abs_lambda = 0.0;  // ell = -2 pi Im tau
  double lambda_turns = 0.0;    // Re tau mod 1
  double q_turns = 0.0;
  double theta2_turns = 0.0;
  double re_tau = 0.0;
  double im_tau = 1.0;
};

DerivedConstants derive_constants(const GroupParams& params, const Real& theta2);

// Unit complex number exp(2 pi i t).
cplx unit_turns(double t);

struct NormalizedLattice {
  cplx s;
  cplx t;
};

NormalizedLattice normalize_lattice(const GroupParams& params);

// A point of (C*)^2 stored in log-polar form; angles are radians in [0, 2 pi).
struct CoverPoint {
  double u = 0.0;  // log|xi|
  double alpha = 0.0;
  double v = 0.0;  // log|eta|
  double beta = 0.0;

  static CoverPoint from_cartesian(cplx xi, cplx eta);
  static CoverPoint from_log_polar(double u, double alpha, double v, double beta);
  cplx xi() const;
  cplx eta() const;
};

double wrap_angle(double a);

CoverPoint sigma_apply(const CoverPoint& point, std::int64_t n, const DerivedConstants& c);

// (rep, n) with |lambda| < |xi_rep| <= 1 and sigma^n(rep) = point.
std::pair<CoverPoint, std::int64_t> reduce_to_fundamental(const CoverPoint& point, const DerivedConstants& c);

}  // namespace tlab
