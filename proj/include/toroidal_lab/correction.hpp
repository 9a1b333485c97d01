#pragma once

// F = nu^{-1} sigma^* g - g for a solved section g, its eta-mode profile, the
// xi-series a0 = (eta-constant part of F), the correction A with
// nu^{-1} A(lambda xi) - A(xi) = a0(xi), and g~ = g - A.

#include "toroidal_lab/dbar_solve.hpp"

#include <vector>

namespace tlab {

struct ChainOptions {
  int u_samples = 3;         // u = k ell/u_samples, k = 0..u_samples-1
  int v_stride = 16;         // every v_stride-th grid v inside the band
  double band = 3.5;         // |v| <= band
  int ka = 32;               // xi-angular points per slice
  int xi_modes = 8;          // a0 extracted for |m| <= xi_modes
  double tol = 1e-8;         // eta-mode and holomorphy tolerance
  double resonance_tol = 1e-10;
  double drop_tol = 1e-12;
};

struct ChainReport {
  double F_sup = 0.0;
  double holomorphy_residual = 0.0;  // sup |dbar F|
  std::vector<double> eta_profile;   // index n + kb/2: sup over samples of |F_n| |eta|^n
  int eta_profile_offset = 0;
  double eta_mode_max = 0.0;         // over n != 0
  bool constancy_ok = false;         // eta_mode_max < tol
  bool holomorphy_ok = false;
  LaurentSeries1 a0;
  LaurentSeries1 A;
  double A_sup = 0.0;                // max |A_m|
  CoverSection g_tilde;
  double equivariance_before = 0.0;  // sup |sigma^* g - nu g| over the samples
  double equivariance_after = 0.0;
};

// Propagates ResonantObstruction from correction_A (nu = 1 with a nonzero constant term).
ChainReport correction_chain(const CoverSection& g_hat, const ChainOptions& opt = {});

// sup over the chain samples of |sigma^* g - nu g|.
double section_equivariance_residual(const CoverSection& g, const ChainOptions& opt = {});

}  // namespace tlab
