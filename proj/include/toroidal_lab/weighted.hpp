#pragma once

// Weighted L^2 quantities of a test form over the slabs D_n, computed on D_0 via the
// sigma-invariance of |f|_omega and d lambda~: on sigma^n(D_0) only e^{-psi} changes.
// Angles are integrated exactly (Parseval), u by Gauss-Legendre on [log|lambda|, 0],
// v by composite Gauss-Legendre on the support band.

#include "toroidal_lab/fixtures.hpp"

#include <vector>

namespace tlab {

struct QuadratureOptions {
  int n_window = 3;
  int u_nodes = 64;
  int v_nodes = 64;
  int v_panels = 8;
};

struct SlabTerm {
  int n = 0;
  double value = 0.0;  // int_{D_n} |f|^2 e^{-psi} d lambda~
  double bound = 0.0;  // e^{-(log|lambda|^2)^2 |n|} int_{D_0} |f|^2 d lambda~
};

struct Claim41Report {
  double d0_integral = 0.0;         // int_{D_0} |f|^2_omega d lambda~
  double d0_flat = 0.0;             // int_{D_0} |f|^2_omega / (|eta|^2 + |eta|^-2) d lambda~
  std::vector<SlabTerm> terms;      // n = -n_window .. n_window
  double total = 0.0;
  double bound = 0.0;
  double slack = 0.0;               // bound - total
  double tail_fraction = 0.0;       // sum over |n| >= 2 relative to total
  double first_bound = 0.0;         // 2 sum_{n >= 0} e^{-n^2 L} d0_flat, L = (log|lambda|^2)^2
  double penultimate_bound = 0.0;   // 2 sum_{n >= 0} e^{-n L} d0_flat
  double quadrature_error = 0.0;    // relative change of total under refinement
  bool holds = false;
};

// QuadratureDivergence on non-finite samples; DomainError if |f| is not sigma-invariant.
Claim41Report claim41_integrals(const FormSource& f, const DerivedConstants& c, const QuadratureOptions& q = {});

struct Lemma42Report {
  double lhs = 0.0;  // sum_n int_{D_n} |f ^ dxi/xi ^ deta/eta|^2 e^{-psi} d lambda~
  double rhs = 0.0;  // sum_n int_{D_n} |f|^2 e^{-psi} d lambda~
  double ratio = 0.0;
  bool holds = false;  // lhs <= rhs/2 up to 1e-10 relative
};

Lemma42Report lemma42_check(const FormSource& f, const DerivedConstants& c, const QuadratureOptions& q = {});

}  // namespace tlab
