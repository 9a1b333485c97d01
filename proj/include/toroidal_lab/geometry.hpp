#pragma once

// Weight psi = (log|xi|^2)^2 + log(|eta|^2 + |eta|^-2), the Kaehler form
// omega = i|xi|^-2 dxi^dxibar + i(1 + |eta|^-4) deta^detabar and its volume form.

#include "toroidal_lab/group_core.hpp"

namespace tlab {

struct GeometryValues {
  double psi = 0.0;
  double g_xixi = 0.0;        // omega = i g_xixi dxi^dxibar + i g_etaeta deta^detabar
  double g_etaeta = 0.0;
  double vol_density = 0.0;   // d lambda~ against Lebesgue measure in (xi, eta)
  double curvature_xi = 0.0;  // coefficients of i ddbar psi
  double curvature_eta = 0.0;
};

GeometryValues geometry_eval(const CoverPoint& p);

// psi split by variable: 4u^2 and log(2 cosh 2v).
double psi_xi(double u);
double psi_eta(double v);

// d lambda~ in log-polar coordinates: 4 (e^{2v} + e^{-2v}) du dalpha dv dbeta.
double log_volume_density(double v);

// |deta/eta|^2_omega = 1/(|eta|^2 + |eta|^-2).
double eta_frame_norm(double v);

// Components against dxibar, detabar.
struct FormComponents {
  cplx f_xibar;
  cplx f_etabar;
};

// |f|^2_omega = |f_xibar|^2/g_xixi + |f_etabar|^2/g_etaeta.
double form_norm(const FormComponents& f, const CoverPoint& p);

// Same, for f = a dxibar/xibar + b detabar/etabar.
double log_frame_norm(cplx a, cplx b, double v);

FormComponents from_log_frame(cplx a, cplx b, const CoverPoint& p);

}  // namespace tlab
