#include "toroidal_lab/pipeline.hpp"

#include "toroidal_lab/errors.hpp"

#include <cmath>

namespace tlab {

LogPolarGrid pipeline_grid(const PipelineConfig& cfg, const DerivedConstants& c) {
  LogPolarGrid g = cfg.grid;
  g.u_max = 0.0;
  g.u_span = -c.log_abs_lambda;
  return g;
}

PipelineReport run_pipeline(const PipelineConfig& cfg) {
  if (!cfg.params.p.is_integer() || cfg.params.p.sign() != 0) {
    throw DomainError("the dbar pipeline covers p = 0 only");
  }
  PipelineReport r;
  r.recipe = cfg.recipe;
  r.constants = derive_constants(cfg.params, cfg.theta2);
  const DerivedConstants& c = r.constants;
  const Recipe recipe = Recipe::from_name(cfg.recipe);
  const Form01 f = build_test_form(c, pipeline_grid(cfg, c), recipe);
  if (!f.equivariant) throw DomainError("recipe '" + cfg.recipe + "' is not sigma-equivariant and cannot be solved on X");
  r.support = f.support;
  r.support_leak = f.support_leak;
  r.form_equivariance = form_equivariance_residual(*f.source, c, 200, 7);
  if (r.form_equivariance > 1e-10) r.failures.push_back("form equivariance");
  if (r.support_leak > 1e-14) r.failures.push_back("form support");

  if (f.source->norm_invariant()) {
    r.claim41 = claim41_integrals(*f.source, c, cfg.quadrature);
    r.lemma42 = lemma42_check(*f.source, c, cfg.quadrature);
    r.input_weighted_l2 = std::sqrt(r.claim41->total);
    if (!r.claim41->holds) r.failures.push_back("claim 4.1 bound");
    if (r.claim41->quadrature_error > cfg.quadrature_tol) r.failures.push_back("quadrature tolerance");
    if (!r.lemma42->holds) r.failures.push_back("lemma 4.2 inequality");
  }

  const DbarSolution sol = solve_dbar_modes(f, cfg.solve);
  r.closedness = sol.closedness;
  r.min_divisor = sol.min_divisor;
  r.min_divisor_mode = sol.min_divisor_mode;
  r.skipped_modes = sol.skipped.size();
  r.dbar_residual = sol.dbar_residual;
  for (const auto& m : sol.mode_residuals) r.max_mode_residual = std::max(r.max_mode_residual, m.residual);
  if (r.dbar_residual > cfg.residual_tol) r.failures.push_back("dbar residual");

  if (cfg.truncation_study) {
    r.truncation = truncation_convergence_study(f, cfg.truncations, cfg.solve);
    for (std::size_t i = 1; i < r.truncation.size(); ++i) {
      const double floor = 1e-12;
      if (r.truncation[i].residual > 2.0 * std::max(r.truncation[i - 1].residual, floor)) {
        r.failures.push_back("truncation study not monotone");
        break;
      }
    }
  }

  ChainOptions chain = cfg.chain;
  chain.band = std::min(chain.band, f.spectral->grid().v_half);
  r.chain = correction_chain(sol.g, chain);
  if (!r.chain.holomorphy_ok) r.failures.push_back("holomorphy of F");
  if (!r.chain.constancy_ok) r.failures.push_back("eta-constancy of F");
  r.final_equivariance = r.chain.equivariance_after;
  if (r.final_equivariance > cfg.equivariance_tol) r.failures.push_back("equivariance of g~");
  r.final_dbar_residual = dbar_residual(r.chain.g_tilde, f);

  if (!f.potential.empty()) {
    const Field g = r.chain.g_tilde.grid_values();
    double sup = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) sup = std::max(sup, std::abs(g[i] - f.potential[i]));
    r.round_trip = sup;
    if (sup > cfg.residual_tol) r.failures.push_back("round trip");
  }
  r.support_decay = support_decay_report(r.chain.g_tilde, f.support, cfg.support_margin);
  if (r.support_decay > cfg.residual_tol) r.failures.push_back("support decay");
  return r;
}

}  // namespace tlab
