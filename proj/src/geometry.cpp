#include "toroidal_lab/geometry.hpp"

#include <cmath>

namespace tlab {

double psi_xi(double u) { return 4.0 * u * u; }

double psi_eta(double v) {
  const double a = std::abs(2.0 * v);
  return a + std::log1p(std::exp(-2.0 * a));
}

double log_volume_density(double v) { return 8.0 * std::cosh(2.0 * v); }

double eta_frame_norm(double v) { return 0.5 / std::cosh(2.0 * v); }

GeometryValues geometry_eval(const CoverPoint& p) {
  GeometryValues g;
  g.psi = psi_xi(p.u) + psi_eta(p.v);
  g.g_xixi = std::exp(-2.0 * p.u);
  g.g_etaeta = 1.0 + std::exp(-4.0 * p.v);
  g.vol_density = 4.0 * g.g_xixi * g.g_etaeta;
  g.curvature_xi = 2.0 * g.g_xixi;
  const double s = 2.0 * std::cosh(2.0 * p.v);  // |eta|^2 + |eta|^-2
  g.curvature_eta = 4.0 * std::exp(-2.0 * p.v) / (s * s);
  return g;
}

double form_norm(const FormComponents& f, const CoverPoint& p) {
  const double gx = std::exp(-2.0 * p.u);
  const double ge = 1.0 + std::exp(-4.0 * p.v);
  return std::norm(f.f_xibar) / gx + std::norm(f.f_etabar) / ge;
}

double log_frame_norm(cplx a, cplx b, double v) { return std::norm(a) + std::norm(b) * eta_frame_norm(v); }

FormComponents from_log_frame(cplx a, cplx b, const CoverPoint& p) {
  return {a / std::conj(p.xi()), b / std::conj(p.eta())};
}

}  // namespace tlab
