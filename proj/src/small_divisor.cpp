#include "toroidal_lab/small_divisor.hpp"

#include "toroidal_lab/errors.hpp"

#include <cmath>
#include <limits>

namespace tlab {

namespace {

// exp(w) - 1 without cancellation near w = 0.
cplx cexpm1(cplx w) {
  const double a = w.real();
  const double b = w.imag();
  const double s = std::sin(0.5 * b);
  return {std::expm1(a) * std::cos(b) - 2.0 * s * s, std::exp(a) * std::sin(b)};
}

// Reduce a phase in turns to [-1/2, 1/2).
double centered_turns(double t) { return t - std::floor(t + 0.5); }

}  // namespace

cplx divisor_value(const DerivedConstants& c, int m, int n) {
  double t = centered_turns(m * c.lambda_turns) + centered_turns(n * c.q_turns) - c.theta2_turns;
  t = centered_turns(t);
  return c.nu * cexpm1(cplx(m * c.log_abs_lambda, kTwoPi * t));
}

cplx correction_divisor(const DerivedConstants& c, int m) {
  double t = centered_turns(centered_turns(m * c.lambda_turns) - c.theta2_turns);
  return cexpm1(cplx(m * c.log_abs_lambda, kTwoPi * t));
}

cplx DivisorTable::value(int m, int n) const {
  if (std::abs(m) > box_m || std::abs(n) > box_n) throw DomainError("index outside the divisor table");
  const std::size_t idx = static_cast<std::size_t>(m + box_m) * static_cast<std::size_t>(2 * box_n + 1) +
                          static_cast<std::size_t>(n + box_n);
  return entries[idx].value;
}

DivisorTable divisor_min_scan(const DerivedConstants& c, int box_n, int box_m, double resonance_tol) {
  if (box_n < 1 || box_m < 1) throw DomainError("divisor box must be at least 1");
  DivisorTable t;
  t.constants = c;
  t.box_n = box_n;
  t.box_m = box_m;
  t.resonance_tol = resonance_tol;
  double best = std::numeric_limits<double>::infinity();
  for (int m = -box_m; m <= box_m; ++m) {
    for (int n = -box_n; n <= box_n; ++n) {
      const cplx d = divisor_value(c, m, n);
      const double a = std::abs(d);
      if (a < best) {
        best = a;
        t.min_index = t.entries.size();
      }
      if (a < resonance_tol) t.resonances.emplace_back(m, n);
      t.entries.push_back({m, n, d});
    }
  }
  return t;
}

CohomSolveReport solve_cohomological(const LaurentSeries2& F, const DerivedConstants& c, double resonance_tol,
                                     double drop_tol) {
  CohomSolveReport rep;
  rep.G = LaurentSeries2::zeros(F.n_min, F.n_max, F.m_min, F.m_max);
  rep.min_divisor = std::numeric_limits<double>::infinity();
  for (int n = F.n_min; n <= F.n_max; ++n) {
    for (int m = F.m_min; m <= F.m_max; ++m) {
      const cplx a = F.at(n, m);
      if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) throw DomainError("non-finite coefficient in F");
      const cplx d = divisor_value(c, m, n);
      const double ad = std::abs(d);
      if (ad < resonance_tol) {
        if (std::abs(a) >= drop_tol) throw ResonantObstruction("solve_cohomological", {m, n}, std::abs(a), ad);
        rep.skipped.push_back({{m, n}, std::abs(a), ad});
        continue;
      }
      if (ad < rep.min_divisor) {
        rep.min_divisor = ad;
        rep.min_divisor_mode = {m, n};
      }
      rep.G.at(n, m) = c.nu * a / d;
    }
  }
  return rep;
}

double verify_functional_equation(const LaurentSeries2& G, const LaurentSeries2& F, const DerivedConstants& c,
                                  const EvalGrid& grid) {
  double worst = 0.0;
  for (double rx : grid.xi_radii) {
    for (double re : grid.eta_radii) {
      for (int j = 0; j < grid.k_xi; ++j) {
        const cplx xi = std::polar(rx, kTwoPi * j / grid.k_xi);
        for (int b = 0; b < grid.k_eta; ++b) {
          const cplx eta = std::polar(re, kTwoPi * b / grid.k_eta);
          const cplx lhs = eval_series(G, c.lambda * xi, c.mu * eta) - c.nu * eval_series(G, xi, eta);
          worst = std::max(worst, std::abs(lhs - c.nu * eval_series(F, xi, eta)));
        }
      }
    }
  }
  return worst;
}

LaurentSeries1 correction_A(const LaurentSeries1& a0, const DerivedConstants& c, double resonance_tol,
                            double drop_tol) {
  LaurentSeries1 A = LaurentSeries1::zeros(a0.m_min, a0.m_max);
  A.radius = a0.radius;
  for (int m = a0.m_min; m <= a0.m_max; ++m) {
    const cplx d = correction_divisor(c, m);
    const double ad = std::abs(d);
    if (ad < resonance_tol) {
      if (std::abs(a0.at(m)) >= drop_tol) throw ResonantObstruction("correction_A", {m}, std::abs(a0.at(m)), ad);
      continue;
    }
    A.at(m) = a0.at(m) / d;
  }
  return A;
}

ConvergenceVerdict convergence_certificate(const DecaySlopes& eta_decay, const DivisorTable& table) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  ConvergenceVerdict v;
  if (eta_decay.all_zero) {
    v.certified = true;
    v.log_r_inner = -inf;
    v.log_r_outer = inf;
    v.reason = "zero data";
    return v;
  }
  double gamma = 0.0;
  for (const auto& e : table.entries) {
    if (e.m != 0 || e.n == 0) continue;
    const double a = std::abs(e.value);
    if (a < table.resonance_tol) {
      v.reason = "resonant divisor on the m = 0 row";
      v.divisor_rate = -inf;
      return v;
    }
    gamma = std::min(gamma, std::log(a) / std::abs(e.n));
  }
  v.divisor_rate = gamma;
  const double s_out = eta_decay.outer.value_or(-inf);
  const double s_in = eta_decay.inner.value_or(inf);
  v.log_r_outer = -(s_out - gamma);
  v.log_r_inner = -(s_in + gamma);
  v.certified = v.log_r_inner < v.log_r_outer;
  v.reason = v.certified ? "coefficient decay beats divisor smallness" : "small divisors beat decay";
  return v;
}

ConvergenceVerdict correction_certificate(const DecaySlopes& xi_decay, const DerivedConstants& c,
                                          bool constant_mode_present) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  ConvergenceVerdict v;
  if (xi_decay.all_zero) {
    v.certified = true;
    v.log_r_inner = -inf;
    v.log_r_outer = inf;
    v.reason = "zero data";
    return v;
  }
  if (constant_mode_present && std::abs(correction_divisor(c, 0)) < 1e-10) {
    v.reason = "resonant constant mode (nu = 1)";
    return v;
  }
  // |lambda^m nu^{-1} - 1| >= 1 - |lambda| (m >= 1) and >= |lambda|^{-|m|} - 1 (m <= -1):
  // A converges wherever a0 does.
  v.log_r_outer = -xi_decay.outer.value_or(-inf);
  v.log_r_inner = -xi_decay.inner.value_or(inf);
  v.certified = v.log_r_inner < v.log_r_outer;
  v.reason = v.certified ? "divisors bounded below off m = 0" : "a0 has no annulus of convergence";
  return v;
}

}  // namespace tlab
