#include "toroidal_lab/group_core.hpp"

#include "toroidal_lab/errors.hpp"

#include <cmath>

namespace tlab {

GroupParams::GroupParams(cplx tau_, Real p_, Real q_, int bits)
    : tau(tau_), p(std::move(p_)), q(std::move(q_)), precision_bits(bits) {
  if (!(tau.imag() > 0.0)) throw DomainError("Im(tau) must be positive");
  if (bits < 53) throw DomainError("precision context must be at least 53 bits");
}

cplx unit_turns(double t) {
  t -= std::floor(t);
  // Exact values at the quarter turns keep mu = -1, i, ... free of rounding.
  if (t == 0.0) return {1.0, 0.0};
  if (t == 0.25) return {0.0, 1.0};
  if (t == 0.5) return {-1.0, 0.0};
  if (t == 0.75) return {0.0, -1.0};
  return {std::cos(kTwoPi * t), std::sin(kTwoPi * t)};
}

DerivedConstants derive_constants(const GroupParams& params, const Real& theta2) {
  if (!(params.tau.imag() > 0.0)) throw DomainError("Im(tau) must be positive");
  DerivedConstants c;
  c.re_tau = params.tau.real();
  c.im_tau = params.tau.imag();
  c.log_abs_lambda = -kTwoPi * c.im_tau;
  c.lambda_turns = c.re_tau - std::floor(c.re_tau);
  c.q_turns = params.q.frac().to_double();
  c.theta2_turns = theta2.frac().to_double();
  if (c.q_turns >= 1.0) c.q_turns = 0.0;
  if (c.theta2_turns >= 1.0) c.theta2_turns = 0.0;
  c.lambda = std::exp(c.log_abs_lambda) * unit_turns(c.lambda_turns);
  c.mu = unit_turns(c.q_turns);
  c.nu = unit_turns(c.theta2_turns);
  return c;
}

NormalizedLattice normalize_lattice(const GroupParams& params) {
  if (!(params.tau.imag() > 0.0)) throw DomainError("Im(tau) must be positive");
  return {params.tau, cplx(params.q.to_double(), 0.0) - params.p.to_double() * params.tau};
}

double wrap_angle(double a) {
  double r = std::fmod(a, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

CoverPoint CoverPoint::from_cartesian(cplx xi, cplx eta) {
  if (xi == cplx(0.0) || eta == cplx(0.0)) throw DomainError("cover points need xi != 0 and eta != 0");
  return {std::log(std::abs(xi)), wrap_angle(std::arg(xi)), std::log(std::abs(eta)), wrap_angle(std::arg(eta))};
}

CoverPoint CoverPoint::from_log_polar(double u, double alpha, double v, double beta) {
  return {u, wrap_angle(alpha), v, wrap_angle(beta)};
}

cplx CoverPoint::xi() const { return std::polar(std::exp(u), alpha); }
cplx CoverPoint::eta() const { return std::polar(std::exp(v), beta); }

CoverPoint sigma_apply(const CoverPoint& point, std::int64_t n, const DerivedConstants& c) {
  if (n == 0) return point;
  const auto nd = static_cast<double>(n);
  // Reduce n * (phase) mod 1 before converting to radians.
  double ta = nd * c.lambda_turns;
  double tb = nd * c.q_turns;
  ta -= std::floor(ta);
  tb -= std::floor(tb);
  return {point.u + nd * c.log_abs_lambda, wrap_angle(point.alpha + kTwoPi * ta), point.v,
          wrap_angle(point.beta + kTwoPi * tb)};
}

std::pair<CoverPoint, std::int64_t> reduce_to_fundamental(const CoverPoint& point, const DerivedConstants& c) {
  const double ell = c.log_abs_lambda;
  if (!(ell < 0.0)) throw DomainError("reduce_to_fundamental needs |lambda| < 1");
  // D_n = {(n+1) ell < u <= n ell}; snap ratios within 1e-12 of an integer onto the slab's outer edge.
  double t = point.u / ell;
  double k = std::round(t);
  double n = std::abs(t - k) <= 1e-12 * std::max(1.0, std::abs(t)) ? k : std::floor(t);
  auto idx = static_cast<std::int64_t>(n);
  CoverPoint rep = sigma_apply(point, -idx, c);
  if (std::abs(t - k) <= 1e-12 * std::max(1.0, std::abs(t))) rep.u = 0.0;
  return {rep, idx};
}

}  // namespace tlab
