#pragma once

// Divisors lambda^m mu^n - nu, the formal solve of sigma^*G - nu G = nu F,
// the one-variable correction A(xi), and convergence certificates.

#include "toroidal_lab/laurent.hpp"

#include <string>
#include <utility>
#include <vector>

namespace tlab {

// lambda^m mu^n - nu, evaluated as nu * expm1(m log lambda + 2 pi i (n q - theta2)).
cplx divisor_value(const DerivedConstants& c, int m, int n);
// lambda^m nu^{-1} - 1 (the divisor of the A-correction).
cplx correction_divisor(const DerivedConstants& c, int m);

struct DivisorEntry {
  int m = 0;
  int n = 0;
  cplx value;
};

struct DivisorTable {
  DerivedConstants constants;
  int box_n = 0;
  int box_m = 0;
  double resonance_tol = 1e-10;
  std::vector<DivisorEntry> entries;  // m-major, then n, both ascending
  std::size_t min_index = 0;
  std::vector<std::pair<int, int>> resonances;  // (m, n)

  const DivisorEntry& min_entry() const { return entries[min_index]; }
  cplx value(int m, int n) const;
};

DivisorTable divisor_min_scan(const DerivedConstants& c, int box_n, int box_m, double resonance_tol = 1e-10);

struct SkippedMode {
  std::vector<int> mode;
  double data_abs = 0.0;
  double divisor_abs = 0.0;
};

struct CohomSolveReport {
  LaurentSeries2 G;
  std::vector<SkippedMode> skipped;
  double min_divisor = 0.0;
  std::pair<int, int> min_divisor_mode{0, 0};  // (m, n)
};

CohomSolveReport solve_cohomological(const LaurentSeries2& F, const DerivedConstants& c,
                                     double resonance_tol = 1e-10, double drop_tol = 1e-12);

struct EvalGrid {
  std::vector<double> xi_radii{1.0};
  std::vector<double> eta_radii{1.0};
  int k_xi = 16;
  int k_eta = 16;
};

// sup over the grid of |G(lambda xi, mu eta) - nu G(xi, eta) - nu F(xi, eta)|.
double verify_functional_equation(const LaurentSeries2& G, const LaurentSeries2& F, const DerivedConstants& c,
                                  const EvalGrid& grid);

LaurentSeries1 correction_A(const LaurentSeries1& a0, const DerivedConstants& c, double resonance_tol = 1e-10,
                            double drop_tol = 1e-12);

struct ConvergenceVerdict {
  bool certified = false;
  // certified annulus exp(log_r_inner) < |z| < exp(log_r_outer)
  double log_r_inner = 0.0;
  double log_r_outer = 0.0;
  double divisor_rate = 0.0;  // gamma: min over the m = 0 row of log|delta_{0,n}| / |n| (<= 0)
  std::string reason;
};

// Eta-direction certificate for G from the decay of F and the m = 0 divisor row.
ConvergenceVerdict convergence_certificate(const DecaySlopes& eta_decay, const DivisorTable& table);
// Xi-direction certificate for the A-series from the decay of a0.
ConvergenceVerdict correction_certificate(const DecaySlopes& xi_decay, const DerivedConstants& c,
                                          bool constant_mode_present);

}  // namespace tlab
