#include "toroidal_lab/errors.hpp"
#include "toroidal_lab/pipeline.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace tlab;

namespace {

DerivedConstants constants(const char* th = "1/3") {
  return derive_constants(GroupParams(cplx(0, 1), Real::from_int(0), Real::parse("sqrt(2)")), Real::parse(th));
}

LogPolarGrid small_grid(const DerivedConstants& c) {
  return LogPolarGrid{0.0, -c.log_abs_lambda, 8, 8, 3.5, 128, 16};
}

struct Solved {
  DerivedConstants c = constants();
  Form01 f;
  DbarSolution sol;
  Solved() {
    PipelineConfig cfg;
    f = build_test_form(c, pipeline_grid(cfg, c), Recipe::from_name("smooth"));
    sol = solve_dbar_modes(f);
  }
};

const Solved& solved() {
  static const Solved s;
  return s;
}

}  // namespace

TEST(Spectral, RoundTripAndSingleModeDbar) {
  const DerivedConstants c = constants();
  const TwistedSpectral sp(small_grid(c), c);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> R(-1, 1);
  Field values(sp.grid().size());
  for (auto& x : values) x = cplx(R(rng), R(rng));
  const Field back = sp.to_grid(sp.to_modes(values));
  double err = 0;
  for (std::size_t i = 0; i < values.size(); ++i) err = std::max(err, std::abs(back[i] - values[i]));
  EXPECT_LT(err, 1e-13);
}

TEST(Spectral, RejectsGridNotCoveringOneSlab) {
  const DerivedConstants c = constants();
  LogPolarGrid g = small_grid(c);
  g.u_span *= 0.5;
  EXPECT_THROW(TwistedSpectral(g, c), DomainError);
}

TEST(Fixtures, ZeroFormSolvesToZero) {
  const DerivedConstants c = constants();
  const Form01 f = build_test_form(c, small_grid(c), Recipe::from_name("zero"));
  EXPECT_EQ(sup_norm(f.a), 0.0);
  const DbarSolution s = solve_dbar_modes(f);
  EXPECT_EQ(sup_norm(s.g.grid_values()), 0.0);
  EXPECT_EQ(s.dbar_residual, 0.0);
}

TEST(Fixtures, FormInvariants) {
  const DerivedConstants c = constants();
  for (const char* name : {"smooth", "rough"}) {
    const auto src = make_source(Recipe::from_name(name), c);
    EXPECT_LT(form_equivariance_residual(*src, c, 200, 1), 1e-10) << name;
    EXPECT_LT(closedness_check(*src, 50, 2), 1e-6) << name;
  }
  const auto cech = make_source(Recipe::from_name("cech"), c);
  EXPECT_LT(closedness_check(*cech, 50, 2), 1e-6);
  EXPECT_FALSE(cech->equivariant());
  EXPECT_EQ(solved().f.support_leak, 0.0);
}

TEST(Fixtures, ExactRecipeFormula) {
  // g0 = chi(v) eta  =>  f = eta chi'(v) / (2 etabar) detabar, i.e. b = chi'(v) eta / 2 in the log frame
  const DerivedConstants c = constants();
  Recipe r = Recipe::from_name("cech");
  const auto src = make_source(r, c);
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> U(-1.5, 1.5), A(0, kTwoPi);
  for (int i = 0; i < 200; ++i) {
    const CoverPoint p = CoverPoint::from_log_polar(U(rng) - 3, A(rng), U(rng), A(rng));
    const auto [a, b] = src->components(p);
    EXPECT_EQ(a, cplx(0.0));
    EXPECT_NEAR(std::abs(b - 0.5 * r.cech.chi.derivative(p.v) * p.eta()), 0.0, 1e-14);
  }
}

TEST(Fixtures, SupportOutsideBandIsRejected) {
  const DerivedConstants c = constants();
  LogPolarGrid g = small_grid(c);
  g.v_half = 1.5;
  EXPECT_THROW(build_test_form(c, g, Recipe::from_name("smooth")), DomainError);
}

TEST(DbarSolve, ManufacturedSolution) {
  const Solved& s = solved();
  EXPECT_LT(s.sol.dbar_residual, 1e-6);
  EXPECT_LT(s.sol.closedness, 1e-6);
  EXPECT_GT(s.sol.min_divisor, 0.0);
  EXPECT_LT(support_decay_report(s.sol.g, s.f.support, 0.5), 1e-6);
}

TEST(DbarSolve, TruncationStudyImproves) {
  const Solved& s = solved();
  const auto rows = truncation_convergence_study(s.f, {8, 16, 32});
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_LT(rows[2].residual, rows[0].residual / 10);
  EXPECT_LE(rows[1].residual, rows[0].residual);
}

TEST(DbarSolve, TrivialCharacterModeIsResonant) {
  // theta2 = 0: the (n, j, l) = (0, 0, 0) mode has divisor zero and the fixture carries data there
  const DerivedConstants c = constants("0");
  const Form01 f = build_test_form(c, pipeline_grid(PipelineConfig{}, c), Recipe::from_name("smooth"));
  try {
    solve_dbar_modes(f);
    FAIL() << "expected a resonant obstruction";
  } catch (const ResonantObstruction& e) {
    EXPECT_EQ(e.mode, (std::vector<int>{0, 0, 0}));
  }
}

TEST(DbarSolve, NonEquivariantFormIsRejected) {
  const DerivedConstants c = constants();
  const Form01 f = build_test_form(c, small_grid(c), Recipe::from_name("cech"));
  EXPECT_THROW(solve_dbar_modes(f), DomainError);
}

TEST(CorrectionChain, EquivariantInputNeedsNoCorrection) {
  const Solved& s = solved();
  const ChainReport r = correction_chain(s.sol.g);
  EXPECT_LT(r.F_sup, 1e-10);
  EXPECT_LT(r.A_sup, 1e-10);
  EXPECT_TRUE(r.constancy_ok);
  EXPECT_LT(r.equivariance_after, 1e-8);
}

TEST(CorrectionChain, RemovesXiDefectAndFlagsEtaDefect) {
  const Solved& s = solved();
  LaurentSeries2 d = LaurentSeries2::zeros(0, 0, -1, 1);
  d.at(0, -1) = 0.05;
  d.at(0, 1) = cplx(0.0, 0.3);
  const ChainReport fixed = correction_chain(s.sol.g.with_holomorphic(d));
  EXPECT_GT(fixed.equivariance_before, 1e-3);
  EXPECT_LT(fixed.equivariance_after, 1e-8);
  for (auto x : fixed.g_tilde.holomorphic().coeffs) EXPECT_LT(std::abs(x), 1e-10);

  LaurentSeries2 e = LaurentSeries2::zeros(1, 1, 0, 0);
  e.at(1, 0) = 0.1;
  const ChainReport bad = correction_chain(s.sol.g.with_holomorphic(e));
  EXPECT_FALSE(bad.constancy_ok);
  EXPECT_GT(bad.eta_mode_max, 1e-3);
}

TEST(Pipeline, DefaultRunPasses) {
  const PipelineReport r = run_pipeline(PipelineConfig{});
  for (const auto& f : r.failures) ADD_FAILURE() << f;
  EXPECT_LT(r.dbar_residual, 1e-6);
  EXPECT_LT(r.final_equivariance, 1e-8);
  EXPECT_LT(r.round_trip, 1e-6);
  EXPECT_GE(r.round_trip, 0.0);
}

TEST(Pipeline, ZeroFormPasses) {
  PipelineConfig cfg;
  cfg.recipe = "zero";
  const PipelineReport r = run_pipeline(cfg);
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.dbar_residual, 0.0);
}
