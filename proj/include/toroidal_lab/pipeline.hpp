#pragma once

// The full p = theta1 = 0 run: test form, weighted estimates, mode solve, correction chain,
// round trip against the known potential and the support-decay check.

#include "toroidal_lab/correction.hpp"
#include "toroidal_lab/weighted.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tlab {

struct PipelineConfig {
  GroupParams params{cplx(0.0, 1.0), Real::from_int(0), Real::from_surd(0, 1, 2)};
  Real theta2 = Real::from_rational(Rational(1, 3));
  std::string recipe = "smooth";
  LogPolarGrid grid{0.0, 0.0, 8, 8, 3.5, 512, 64};  // u_span is set from tau
  DbarSolveOptions solve;
  std::vector<int> truncations{8, 16, 32};
  bool truncation_study = true;
  QuadratureOptions quadrature;
  ChainOptions chain;
  double support_margin = 0.5;
  double residual_tol = 1e-6;
  double equivariance_tol = 1e-8;
  double quadrature_tol = 1e-8;
};

struct PipelineReport {
  std::string recipe;
  DerivedConstants constants;
  double support = 0.0;
  double support_leak = 0.0;
  double form_equivariance = 0.0;
  double input_weighted_l2 = 0.0;  // sqrt(sum_n int_{D_n} |f|^2 e^{-psi} d lambda~)
  std::optional<Claim41Report> claim41;
  std::optional<Lemma42Report> lemma42;
  double closedness = 0.0;
  double min_divisor = 0.0;
  std::vector<int> min_divisor_mode;
  std::size_t skipped_modes = 0;
  double dbar_residual = 0.0;
  double max_mode_residual = 0.0;
  std::vector<TruncationRow> truncation;
  ChainReport chain;
  double final_dbar_residual = 0.0;
  double final_equivariance = 0.0;
  double round_trip = -1.0;  // sup |g~ - g0| on the grid, -1 without a potential
  double support_decay = 0.0;
  std::vector<std::string> failures;
  bool passed() const { return failures.empty(); }
};

// Throws ResonantObstruction / AliasingError / DomainError from the stages.
PipelineReport run_pipeline(const PipelineConfig& cfg);

// The grid of a config with its u extent fixed to one slab.
LogPolarGrid pipeline_grid(const PipelineConfig& cfg, const DerivedConstants& c);

}  // namespace tlab
