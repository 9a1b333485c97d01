#include "toroidal_lab/acceptance.hpp"

#include "toroidal_lab/bundle_arith.hpp"
#include "toroidal_lab/diophantine.hpp"
#include "toroidal_lab/errors.hpp"
#include "toroidal_lab/geometry.hpp"
#include "toroidal_lab/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <random>

namespace tlab {

namespace {

std::string format(const char* f, ...) {
  char buf[1024];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

// tau = i, q = sqrt 2, theta2 = 1/3
DerivedConstants default_constants() {
  return derive_constants(GroupParams(cplx(0.0, 1.0), Real::from_int(0), Real::from_surd(0, 1, 2)),
                          Real::from_rational(Rational(1, 3)));
}

using Check = std::pair<bool, std::string>;

Check metric_identities(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(-6.0, 6.0), V(-4.0, 4.0), A(0.0, kTwoPi);
  double xi_err = 0.0, eta_excess = -1.0, eta_unit_err = 0.0;
  bool strict = true;
  for (int i = 0; i < 10000; ++i) {
    const CoverPoint p = CoverPoint::from_log_polar(U(rng), A(rng), V(rng), A(rng));
    xi_err = std::max(xi_err, std::abs(form_norm({1.0 / std::conj(p.xi()), 0.0}, p) - 1.0));
    const double e = form_norm({0.0, 1.0 / std::conj(p.eta())}, p);
    eta_excess = std::max(eta_excess, e - 0.5);
    if (std::abs(p.v) > 1e-3 && !(e < 0.5)) strict = false;
    const CoverPoint p0 = CoverPoint::from_log_polar(p.u, p.alpha, 0.0, p.beta);
    eta_unit_err = std::max(eta_unit_err, std::abs(form_norm({0.0, 1.0 / std::conj(p0.eta())}, p0) - 0.5));
  }
  const bool ok = xi_err <= 1e-14 && eta_excess <= 1e-12 && eta_unit_err <= 1e-12 && strict;
  return {ok, format("max||dxi/xi|^2-1|=%.3g max(|deta/eta|^2-1/2)=%.3g at|eta|=1:%.3g strict=%d", xi_err,
                     eta_excess, eta_unit_err, strict)};
}

long double psi_cartesian(long double x, long double y, long double ex, long double ey) {
  const long double r = x * x + y * y;
  const long double s = ex * ex + ey * ey;
  return std::pow(std::log(r), 2.0L) + std::log(s + 1.0L / s);
}

// Fourth-order central second difference with a step proportional to |z|: a fixed step
// loses to the harmonic log|eta|^2 part, whose fourth derivatives blow up as |eta| -> 0.
template <class F>
long double second_difference(F f, long double h) {
  return (-f(2 * h) + 16 * f(h) - 30 * f(0.0L) + 16 * f(-h) - f(-2 * h)) / (12 * h * h);
}

Check curvature_consistency(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(-2.0, 2.0), A(0.0, kTwoPi);
  constexpr long double rel_step = 1e-3L;
  double worst = 0.0;
  bool positive = true;
  for (int i = 0; i < 1000; ++i) {
    const CoverPoint p = CoverPoint::from_log_polar(U(rng), A(rng), U(rng), A(rng));
    const GeometryValues g = geometry_eval(p);
    positive = positive && g.curvature_xi > 0.0 && g.curvature_eta > 0.0;
    const long double x = p.xi().real(), y = p.xi().imag(), ex = p.eta().real(), ey = p.eta().imag();
    const long double hx = rel_step * std::abs(p.xi()), he = rel_step * std::abs(p.eta());
    // d^2/dz dzbar = Laplacian / 4
    const long double lap_xi = second_difference([&](long double t) { return psi_cartesian(x + t, y, ex, ey); }, hx) +
                               second_difference([&](long double t) { return psi_cartesian(x, y + t, ex, ey); }, hx);
    const long double lap_eta = second_difference([&](long double t) { return psi_cartesian(x, y, ex + t, ey); }, he) +
                                second_difference([&](long double t) { return psi_cartesian(x, y, ex, ey + t); }, he);
    worst = std::max(worst, static_cast<double>(std::abs(lap_xi / 4.0L - g.curvature_xi) / g.curvature_xi));
    worst = std::max(worst, static_cast<double>(std::abs(lap_eta / 4.0L - g.curvature_eta) / g.curvature_eta));
  }
  return {worst <= 1e-6 && positive, format("max relative deviation from finite differences %.3g", worst)};
}

std::vector<std::pair<std::string, Recipe>> estimate_fixtures() {
  return {{"smooth", Recipe::from_name("smooth")},
          {"rough", Recipe::from_name("rough")},
          {"cech(eta)", Recipe::from_name("cech")},
          {"zero", Recipe::from_name("zero")}};
}

Check claim41(double quadrature_tol) {
  const DerivedConstants c = default_constants();
  bool ok = true;
  std::string detail;
  for (const auto& [name, r] : estimate_fixtures()) {
    const auto src = make_source(r, c);
    const Claim41Report rep = claim41_integrals(*src, c);
    const bool tail_ok = rep.total == 0.0 || rep.tail_fraction < 1e-60;
    const bool q_ok = rep.quadrature_error <= quadrature_tol;
    ok = ok && rep.holds && tail_ok && q_ok;
    detail += format("%s: total=%.6g bound=%.6g tail=%.2g qerr=%.2g; ", name.c_str(), rep.total, rep.bound,
                     rep.tail_fraction, rep.quadrature_error);
  }
  return {ok, detail};
}

Check lemma42() {
  const DerivedConstants c = default_constants();
  bool ok = true;
  std::string detail;
  for (const auto& [name, r] : estimate_fixtures()) {
    const auto src = make_source(r, c);
    const Lemma42Report rep = lemma42_check(*src, c);
    ok = ok && rep.holds;
    detail += format("%s: ratio=%.6g; ", name.c_str(), rep.ratio);
  }
  return {ok, detail};
}

Check cohomological(std::uint64_t seed) {
  const DerivedConstants c = default_constants();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> R(-1.0, 1.0);
  EvalGrid grid;
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    LaurentSeries2 F = LaurentSeries2::zeros(-10, 10, -10, 10);
    for (auto& a : F.coeffs) a = cplx(R(rng), R(rng));
    const CohomSolveReport rep = solve_cohomological(F, c);
    double fsup = 0.0;
    for (int j = 0; j < grid.k_xi; ++j)
      for (int b = 0; b < grid.k_eta; ++b)
        fsup = std::max(fsup, std::abs(eval_series(F, std::polar(1.0, kTwoPi * j / grid.k_xi),
                                                   std::polar(1.0, kTwoPi * b / grid.k_eta))));
    worst = std::max(worst, verify_functional_equation(rep.G, F, c, grid) / fsup);
  }
  // nu = -1, mu = 1
  const DerivedConstants h = derive_constants(GroupParams(cplx(0.0, 1.0), Real::from_int(0), Real::from_int(0)),
                                              Real::from_rational(Rational(1, 2)));
  LaurentSeries2 F1 = LaurentSeries2::zeros(0, 0, 0, 0);
  F1.at(0, 0) = 1.0;
  const double g_err = std::abs(solve_cohomological(F1, h).G.at(0, 0) - cplx(-0.5));
  LaurentSeries1 a0 = LaurentSeries1::zeros(0, 0);
  a0.at(0) = 1.0;
  const double a_err = std::abs(correction_A(a0, h).at(0) - cplx(-0.5));
  const bool ok = worst < 1e-11 && g_err <= 1e-14 && a_err <= 1e-14;
  return {ok, format("max residual/||F||=%.3g G00 err=%.2g A0 err=%.2g", worst, g_err, a_err)};
}

Check divisor_structure(std::uint64_t seed) {
  std::vector<std::pair<Real, Real>> cases{{Real::from_surd(0, 1, 2), Real::from_rational(Rational(1, 3))},
                                           {Real::from_surd(0, 1, 2), Real::from_surd(0, 1, 2)},
                                           {Real::golden(), Real::from_int(0)}};
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> D(1, 100000);
  for (int i = 0; i < 20; ++i) {
    cases.push_back({Real::from_rational(Rational(D(rng), 100003)), Real::from_rational(Rational(D(rng), 100019))});
  }
  double worst_lower = 0.0, worst_sine = 0.0, worst_bracket = 0.0;
  bool res_ok = true;
  constexpr int box = 16;
  for (const auto& [q, th] : cases) {
    const DerivedConstants c =
        derive_constants(GroupParams(cplx(0.0, 1.0), Real::from_int(0), q), th);
    const DivisorTable t = divisor_min_scan(c, box, box);
    for (const auto& e : t.entries) {
      const double lower = std::abs(std::pow(std::abs(c.lambda), e.m) - 1.0);
      worst_lower = std::max(worst_lower, (lower - std::abs(e.value)) / std::max(1.0, lower));
    }
    for (const auto& [m, n] : t.resonances) res_ok = res_ok && m == 0;
    const DistanceSequence d = distance_sequence_fiber(q, th, box);
    for (int n = -box; n <= box; ++n) {
      const double off = q.affine(n, -th).residue().offset;
      const double a = std::abs(t.value(0, n));
      worst_sine = std::max(worst_sine, std::abs(a - 2.0 * std::abs(std::sin(kPi * off))));
      if (n >= 1) {
        const double dn = d.entries[static_cast<std::size_t>(n - 1)].exact_zero
                              ? 0.0
                              : d.entries[static_cast<std::size_t>(n - 1)].value();
        worst_bracket = std::max({worst_bracket, 4.0 * dn - a, a - 2.0 * kPi * dn});
      }
    }
  }
  const bool ok = worst_lower <= 1e-12 && res_ok && worst_sine <= 1e-10 && worst_bracket <= 1e-10;
  return {ok, format("%zu tables: lower-bound violation %.2g, resonances on m=0: %d, sine identity %.2g, "
                     "bracket violation %.2g",
                     cases.size(), worst_lower, res_ok, worst_sine, worst_bracket)};
}

Check round_trip() {
  PipelineConfig cfg;
  const PipelineReport r = run_pipeline(cfg);
  double r8 = -1, r32 = -1;
  for (const auto& t : r.truncation) {
    if (t.trunc == 8) r8 = t.residual;
    if (t.trunc == 32) r32 = t.residual;
  }
  const bool ok = r.dbar_residual < 1e-6 && r.final_equivariance < 1e-8 && r.support_decay < 1e-6 &&
                  r32 >= 0 && r8 >= 0 && r32 < r8 / 10.0 && r.form_equivariance < 1e-10 && r.round_trip < 1e-6;
  return {ok, format("dbar=%.3g equivariance=%.3g support_decay=%.3g residual(8)=%.3g residual(32)=%.3g "
                     "round_trip=%.3g",
                     r.dbar_residual, r.final_equivariance, r.support_decay, r8, r32, r.round_trip)};
}

Check correction_chain_check() {
  PipelineConfig cfg;
  const DerivedConstants c = default_constants();
  const Form01 f = build_test_form(c, pipeline_grid(cfg, c), Recipe::from_name("smooth"));
  const DbarSolution sol = solve_dbar_modes(f);
  ChainOptions opt;
  const ChainReport pass = correction_chain(sol.g, opt);

  LaurentSeries2 eta1 = LaurentSeries2::zeros(1, 1, 0, 0);
  eta1.at(1, 0) = 0.05;
  const ChainReport bad = correction_chain(sol.g.with_holomorphic(eta1), opt);

  LaurentSeries2 shaped = LaurentSeries2::zeros(0, 0, -1, 1);
  shaped.at(0, -1) = 0.1;
  shaped.at(0, 0) = 0.2;
  shaped.at(0, 1) = 0.3;
  const ChainReport fixed = correction_chain(sol.g.with_holomorphic(shaped), opt);
  double left = 0.0;
  for (const auto& x : fixed.g_tilde.holomorphic().coeffs) left = std::max(left, std::abs(x));

  LaurentSeries2 tail = LaurentSeries2::zeros(3, 3, 0, 0);
  tail.at(3, 0) = 1e-3;
  const double decay = support_decay_report(sol.g.with_holomorphic(tail), f.support, 0.5);

  const bool ok = pass.eta_mode_max < 1e-8 && pass.constancy_ok && !bad.constancy_ok && left < 1e-10 &&
                  fixed.constancy_ok && fixed.equivariance_after < 1e-8 && decay > 1e-6;
  return {ok, format("passing eta-modes=%.3g; eta^1 defect eta-modes=%.3g flagged=%d; xi defect left=%.3g "
                     "equivariance after=%.3g; eta^3 tail support sup=%.3g flagged=%d",
                     pass.eta_mode_max, bad.eta_mode_max, !bad.constancy_ok, left, fixed.equivariance_after, decay,
                     decay > 1e-6)};
}

constexpr double kDelta0 = 0.25;

Check classification() {
  const DistanceSequence g = distance_sequence_lattice(Real::from_int(0), Real::golden(), 10000);
  const ClassificationReport gr = exp_bound_scan(g, kDelta0);
  const double r = exponent_statistic(g, 100, 10000);
  const bool golden_ok = gr.verdict == Verdict::theta_evidence && r >= -0.01;

  const SuperLiouville s = make_super_liouville(3, 10);
  const ClassificationReport sr = exp_bound_scan(witness_sequence(s), kDelta0);
  bool certified = false;
  for (const auto& w : s.witnesses)
    if (sr.witness_n && w.n == *sr.witness_n) certified = w.certified;
  const bool sl_ok = sr.verdict == Verdict::wild_witness && certified;

  const ContinuedFraction cp = continued_fraction(Real::from_rational(Rational(1, 2)), 64);
  const ContinuedFraction cq = continued_fraction(Real::from_rational(Rational(1, 3)), 64);
  const bool rational_ok = cp.terminated && cq.terminated;

  return {golden_ok && sl_ok && rational_ok,
          format("golden: %s r=%.4f (need >= -0.01); super-Liouville(3,10): %s at n=%lld certified=%d; "
                 "p=1/2,q=1/3: %s",
                 to_string(gr.verdict).c_str(), r, to_string(sr.verdict).c_str(),
                 static_cast<long long>(sr.witness_n.value_or(-1)), certified,
                 rational_ok ? "not toroidal" : "rationality not detected")};
}

bool integral(const Rational& r) { return boost::multiprecision::denominator(r) == 1; }

Check bundle_logic(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> den(1, 12), shift(-20, 20);
  auto rnd = [&]() {
    const int d = den(rng);
    return Rational(std::uniform_int_distribution<int>(0, d - 1)(rng), d);
  };
  int passing = 0, failing = 0, mismatches = 0;
  constexpr int lo = -40, hi = 40;
  while (passing < 50 || failing < 50) {
    const Rational p = rnd(), q = rnd();
    Rational t1 = rnd(), t2 = rnd();
    const bool force_fail = failing < 50 && (passing >= 50 || rng() % 2 == 0);
    if (force_fail) {
      const int n0 = shift(rng);
      t1 = -Rational(n0) * p;
      t2 = -Rational(n0) * q;
    }
    const GroupParams params(cplx(0.0, 1.0), Real::from_rational(p), Real::from_rational(q));
    const AssumptionReport a =
        thm_assumption_check(params, Real::from_rational(t1), Real::from_rational(t2), 100);
    if (a.pass && passing >= 50) continue;
    if (!a.pass && failing >= 50) continue;
    const Character F(Real::from_rational(p), Real::from_rational(q));
    const Character E(Real::from_rational(t1), Real::from_rational(t2));
    const int total = h0_spectrum(F, E, lo, hi).total();
    int brute = 0;
    for (int n = lo; n <= hi; ++n)
      if (integral(t1 + n * p) && integral(t2 + n * q)) ++brute;
    if (total != brute) ++mismatches;
    if (a.pass) {
      ++passing;
      if (total != 0) ++mismatches;
    } else {
      ++failing;
      if (total == 0) ++mismatches;
    }
  }
  int nb_mismatch = 0;
  for (int t = 0; t < 100; ++t) {
    const Rational e1 = rnd(), e2 = rnd(), n1 = rnd(), n2 = rnd();
    const int n_max = static_cast<int>(rng() % 51);
    const NeighborhoodVerdict v = neighborhood_vanishing_check(
        Character(Real::from_rational(e1), Real::from_rational(e2)),
        Character(Real::from_rational(n1), Real::from_rational(n2)), n_max);
    std::optional<std::int64_t> first;
    for (int n = 0; n <= n_max && !first; ++n)
      if (integral(e1 - n * n1) && integral(e2 - n * n2)) first = n;
    if (v.holds != !first.has_value() || v.first_failure != first) ++nb_mismatch;
  }
  return {mismatches == 0 && nb_mismatch == 0,
          format("%d passing / %d failing fixtures, %d H0 mismatches; neighborhood check mismatches %d/100", passing,
                 failing, mismatches, nb_mismatch)};
}

Check norm_constants(std::uint64_t seed) {
  const NormConstants ci = norm_equiv_constants(cplx(0.0, 1.0));
  const bool unit = std::abs(ci.k_lower - 1.0) <= 1e-12 && std::abs(ci.k_upper - 1.0) <= 1e-12;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> I(-1000, 1000);
  int violations = 0;
  for (const cplx tau : {cplx(0.0, 1.0), cplx(0.0, 2.0), cplx(1.0, 1.0)}) {
    const NormConstants k = norm_equiv_constants(tau);
    for (int i = 0; i < 100000; ++i) {
      const int u = I(rng), v = I(rng);
      if (u == 0 && v == 0) continue;
      const double norm = std::hypot(u, v);
      const double val = std::abs(tau * static_cast<double>(u) + static_cast<double>(v));
      if (val < k.k_lower * norm * (1.0 - 1e-12) || val > k.k_upper * norm * (1.0 + 1e-12)) ++violations;
    }
  }
  return {unit && violations == 0,
          format("tau=i -> (%.15g, %.15g); sandwich violations %d / 300000", ci.k_lower, ci.k_upper, violations)};
}

}  // namespace

std::string criterion_name(int id) {
  static const char* names[] = {"",
                                "metric identities",
                                "curvature consistency",
                                "claim 4.1 slab bound",
                                "lemma 4.2 inequality",
                                "cohomological solver",
                                "divisor structure",
                                "dbar round trip",
                                "correction chain",
                                "classification fixtures",
                                "bundle logic",
                                "norm-equivalence constants"};
  if (id < 1 || id > kCriterionCount) throw DomainError("no criterion " + std::to_string(id));
  return names[id];
}

CriterionResult run_criterion(int id, const AcceptanceOptions& opt) {
  CriterionResult r;
  r.id = id;
  r.name = criterion_name(id);
  const auto t0 = std::chrono::steady_clock::now();
  try {
    Check c;
    switch (id) {
      case 1: c = metric_identities(opt.seed); break;
      case 2: c = curvature_consistency(opt.seed); break;
      case 3: c = claim41(opt.quadrature_tol); break;
      case 4: c = lemma42(); break;
      case 5: c = cohomological(opt.seed); break;
      case 6: c = divisor_structure(opt.seed); break;
      case 7: c = round_trip(); break;
      case 8: c = correction_chain_check(); break;
      case 9: c = classification(); break;
      case 10: c = bundle_logic(opt.seed); break;
      case 11: c = norm_constants(opt.seed); break;
    }
    r.passed = c.first;
    r.detail = c.second;
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (id == 1 && r.seconds >= 1.0) {
    r.passed = false;
    r.detail += format(" (runtime %.2f s exceeds 1 s)", r.seconds);
  }
  if (id == 9 && r.seconds >= 10.0) {
    r.passed = false;
    r.detail += format(" (runtime %.2f s exceeds 10 s)", r.seconds);
  }
  return r;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt) {
  std::vector<CriterionResult> out;
  for (int id : opt.selection) out.push_back(run_criterion(id, opt));
  return out;
}

}  // namespace tlab
