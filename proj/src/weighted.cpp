#include "toroidal_lab/weighted.hpp"

#include "toroidal_lab/errors.hpp"
#include "toroidal_lab/geometry.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <cmath>

namespace tlab {

namespace {

struct Rule {
  std::vector<double> x, w;
};

// Gauss-Legendre on [a, b] split into `panels` pieces.
Rule gauss_rule(double a, double b, int nodes, int panels) {
  std::vector<double> abscissa, weight;
  auto load = [&](const auto& zs, const auto& ws) {
    // boost stores the nonnegative half
    for (std::size_t i = 0; i < zs.size(); ++i) {
      abscissa.push_back(static_cast<double>(zs[i]));
      weight.push_back(static_cast<double>(ws[i]));
    }
  };
  switch (nodes) {
    case 32: load(boost::math::quadrature::gauss<double, 32>::abscissa(), boost::math::quadrature::gauss<double, 32>::weights()); break;
    case 48: load(boost::math::quadrature::gauss<double, 48>::abscissa(), boost::math::quadrature::gauss<double, 48>::weights()); break;
    case 64: load(boost::math::quadrature::gauss<double, 64>::abscissa(), boost::math::quadrature::gauss<double, 64>::weights()); break;
    case 96: load(boost::math::quadrature::gauss<double, 96>::abscissa(), boost::math::quadrature::gauss<double, 96>::weights()); break;
    default: throw DomainError("supported Gauss-Legendre sizes are 32, 48, 64, 96");
  }
  Rule r;
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    for (std::size_t i = 0; i < abscissa.size(); ++i) {
      const double z = abscissa[i] * 0.5 * h;
      const double w = weight[i] * 0.5 * h;
      r.x.push_back(mid + z);
      r.w.push_back(w);
      if (abscissa[i] != 0.0) {
        r.x.push_back(mid - z);
        r.w.push_back(w);
      }
    }
  }
  return r;
}

struct Sums {
  std::vector<double> slab;  // per n, |f|^2 weight
  std::vector<double> wedge; // per n, |f ^ dxi/xi ^ deta/eta|^2 weight
  double d0 = 0.0;
  double d0_flat = 0.0;
};

Sums integrate(const FormSource& f, const DerivedConstants& c, const QuadratureOptions& q, int u_nodes,
               int v_nodes, int v_panels) {
  if (!f.norm_invariant()) throw DomainError("|f|_omega is not sigma-invariant; the slab reduction does not apply");
  const double ell = c.log_abs_lambda;
  const double K = f.support();
  const Rule ru = gauss_rule(ell, 0.0, u_nodes, 1);
  const Rule rv = gauss_rule(-K, K, v_nodes, v_panels);
  const int W = q.n_window;
  Sums s;
  s.slab.assign(static_cast<std::size_t>(2 * W + 1), 0.0);
  s.wedge.assign(static_cast<std::size_t>(2 * W + 1), 0.0);
  constexpr double angular = 4.0 * kPi * kPi;
  for (std::size_t iu = 0; iu < ru.x.size(); ++iu) {
    const double u = ru.x[iu];
    for (std::size_t iv = 0; iv < rv.x.size(); ++iv) {
      const double v = rv.x[iv];
      double sa = 0.0, sb = 0.0;
      for (const auto& t : f.angular(u, v)) {
        sa += std::norm(t.a);
        sb += std::norm(t.b);
      }
      const double h = eta_frame_norm(v);
      const double norm2 = angular * (sa + sb * h);  // angular integral of |f|^2_omega
      if (!std::isfinite(norm2)) throw QuadratureDivergence("non-finite integrand sample");
      const double w = ru.w[iu] * rv.w[iv];
      const double vol = log_volume_density(v);
      s.d0 += w * norm2 * vol;
      s.d0_flat += w * norm2 * h * vol;
      // e^{-psi} d lambda~ = 4 e^{-4 (u + n ell)^2} du dalpha dv dbeta on sigma^n(D_0)
      for (int n = -W; n <= W; ++n) {
        const double x = u + n * ell;
        const double weight = 4.0 * std::exp(-4.0 * x * x);
        s.slab[static_cast<std::size_t>(n + W)] += w * norm2 * weight;
        s.wedge[static_cast<std::size_t>(n + W)] += w * norm2 * h * weight;
      }
    }
  }
  return s;
}

double total_of(const std::vector<double>& v) {
  // fixed order: |n| increasing
  const int W = static_cast<int>(v.size() / 2);
  double t = v[static_cast<std::size_t>(W)];
  for (int k = 1; k <= W; ++k) t += v[static_cast<std::size_t>(W - k)] + v[static_cast<std::size_t>(W + k)];
  return t;
}

}  // namespace

Claim41Report claim41_integrals(const FormSource& f, const DerivedConstants& c, const QuadratureOptions& q) {
  const Sums s = integrate(f, c, q, q.u_nodes, q.v_nodes, q.v_panels);
  const int fine_nodes = q.u_nodes >= 64 ? 96 : 64;
  const Sums fine = integrate(f, c, q, fine_nodes, fine_nodes, 2 * q.v_panels);
  Claim41Report r;
  const double L = std::pow(2.0 * c.log_abs_lambda, 2);  // (log|lambda|^2)^2
  const int W = q.n_window;
  r.d0_integral = s.d0;
  r.d0_flat = s.d0_flat;
  for (int n = -W; n <= W; ++n) {
    r.terms.push_back({n, s.slab[static_cast<std::size_t>(n + W)], std::exp(-L * std::abs(n)) * s.d0});
  }
  r.total = total_of(s.slab);
  double bound = r.terms[static_cast<std::size_t>(W)].bound;
  for (int k = 1; k <= W; ++k)
    bound += r.terms[static_cast<std::size_t>(W - k)].bound + r.terms[static_cast<std::size_t>(W + k)].bound;
  r.bound = bound;
  r.slack = r.bound - r.total;
  double tail = 0.0;
  for (const auto& t : r.terms)
    if (std::abs(t.n) >= 2) tail += t.value;
  r.tail_fraction = r.total > 0.0 ? tail / r.total : 0.0;
  for (int n = W; n >= 0; --n) {
    r.first_bound += 2.0 * std::exp(-L * n * n) * s.d0_flat;
    r.penultimate_bound += 2.0 * std::exp(-L * n) * s.d0_flat;
  }
  const double fine_total = total_of(fine.slab);
  r.quadrature_error = fine_total > 0.0 ? std::abs(fine_total - r.total) / fine_total : std::abs(fine_total - r.total);
  r.holds = r.total <= r.bound;
  return r;
}

Lemma42Report lemma42_check(const FormSource& f, const DerivedConstants& c, const QuadratureOptions& q) {
  const Sums s = integrate(f, c, q, q.u_nodes, q.v_nodes, q.v_panels);
  Lemma42Report r;
  r.lhs = total_of(s.wedge);
  r.rhs = total_of(s.slab);
  r.ratio = r.rhs > 0.0 ? r.lhs / r.rhs : 0.0;
  r.holds = r.lhs <= 0.5 * r.rhs * (1.0 + 1e-10);
  return r;
}

}  // namespace tlab
