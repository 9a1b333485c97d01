#include "toroidal_lab/correction.hpp"

#include "toroidal_lab/errors.hpp"

#include <algorithm>
#include <cmath>

namespace tlab {

namespace {

std::vector<int> sample_rows(const LogPolarGrid& gr, const ChainOptions& opt) {
  std::vector<int> rows;
  for (int iv = 0; iv < gr.n_v; iv += std::max(1, opt.v_stride))
    if (std::abs(gr.v(iv)) <= opt.band) rows.push_back(iv);
  if (rows.empty()) throw DomainError("no grid rows inside the chain band");
  return rows;
}

int nearest_row(const LogPolarGrid& gr, double v) {
  int best = 0;
  for (int iv = 1; iv < gr.n_v; ++iv)
    if (std::abs(gr.v(iv) - v) < std::abs(gr.v(best) - v)) best = iv;
  return best;
}

// nu^{-1} g(sigma p) - g(p) on a slice.
std::vector<cplx> F_slice(const CoverSection& g, double u, int iv, int ka, int kb) {
  const cplx inv_nu = 1.0 / g.spectral().constants().nu;
  std::vector<cplx> s1 = g.slice(u, iv, ka, kb, 1);
  const std::vector<cplx> s0 = g.slice(u, iv, ka, kb, 0);
  for (std::size_t i = 0; i < s1.size(); ++i) s1[i] = inv_nu * s1[i] - s0[i];
  return s1;
}

LaurentSeries2 add_xi_row(const LaurentSeries2& h, const LaurentSeries1& r, double sign) {
  if (r.size() <= 0) return h;
  const bool empty = h.rows() <= 0 || h.cols() <= 0;
  const int n_min = empty ? 0 : std::min(h.n_min, 0);
  const int n_max = empty ? 0 : std::max(h.n_max, 0);
  const int m_min = empty ? r.m_min : std::min(h.m_min, r.m_min);
  const int m_max = empty ? r.m_max : std::max(h.m_max, r.m_max);
  LaurentSeries2 out = LaurentSeries2::zeros(n_min, n_max, m_min, m_max);
  for (int n = n_min; n <= n_max; ++n)
    for (int m = m_min; m <= m_max; ++m) out.at(n, m) = h.at(n, m);
  for (int m = r.m_min; m <= r.m_max; ++m) out.at(0, m) += sign * r.at(m);
  return out;
}

}  // namespace

double section_equivariance_residual(const CoverSection& g, const ChainOptions& opt) {
  const TwistedSpectral& sp = g.spectral();
  const LogPolarGrid& gr = sp.grid();
  const cplx nu = sp.constants().nu;
  double worst = 0.0;
  for (int iv : sample_rows(gr, opt))
    for (int k = 0; k < opt.u_samples; ++k) {
      const double u = sp.ell() * k / opt.u_samples;
      const auto s1 = g.slice(u, iv, opt.ka, gr.k_eta, 1);
      const auto s0 = g.slice(u, iv, opt.ka, gr.k_eta, 0);
      for (std::size_t i = 0; i < s1.size(); ++i) worst = std::max(worst, std::abs(s1[i] - nu * s0[i]));
    }
  return worst;
}

ChainReport correction_chain(const CoverSection& g_hat, const ChainOptions& opt) {
  const TwistedSpectral& sp = g_hat.spectral();
  const LogPolarGrid& gr = sp.grid();
  const DerivedConstants& c = sp.constants();
  const int ka = opt.ka;
  const int kb = gr.k_eta;
  if (ka < 2 * opt.xi_modes + 1) throw AliasingError("chain slice too coarse for the requested xi modes");
  const cplx inv_nu = 1.0 / c.nu;

  ChainReport r;
  r.eta_profile_offset = kb / 2 - 1;
  r.eta_profile.assign(static_cast<std::size_t>(2 * r.eta_profile_offset + 1), 0.0);
  for (int iv : sample_rows(gr, opt)) {
    const double radius = std::exp(gr.v(iv));
    for (int k = 0; k < opt.u_samples; ++k) {
      const double u = sp.ell() * k / opt.u_samples;
      const std::vector<cplx> F = F_slice(g_hat, u, iv, ka, kb);
      for (const auto& x : F) r.F_sup = std::max(r.F_sup, std::abs(x));
      // dbar F = nu^{-1} sigma^*(dbar g) - dbar g
      const auto [a1, b1] = g_hat.dbar_slice(u, iv, ka, kb, 1);
      const auto [a0, b0] = g_hat.dbar_slice(u, iv, ka, kb, 0);
      for (std::size_t i = 0; i < a1.size(); ++i) {
        r.holomorphy_residual = std::max(
            {r.holomorphy_residual, std::abs(inv_nu * a1[i] - a0[i]), std::abs(inv_nu * b1[i] - b0[i])});
      }
      // eta modes on each xi circle point
      for (int a = 0; a < ka; ++a) {
        const std::span<const cplx> ring(F.data() + static_cast<std::size_t>(a) * kb, static_cast<std::size_t>(kb));
        const LaurentSeries1 modes =
            coeffs_from_circle_samples(ring, radius, -r.eta_profile_offset, r.eta_profile_offset);
        for (int n = modes.m_min; n <= modes.m_max; ++n) {
          const double amp = std::abs(modes.at(n)) * std::pow(radius, n);
          auto& slot = r.eta_profile[static_cast<std::size_t>(n + r.eta_profile_offset)];
          slot = std::max(slot, amp);
          if (n != 0) r.eta_mode_max = std::max(r.eta_mode_max, amp);
        }
      }
    }
  }
  r.constancy_ok = r.eta_mode_max < opt.tol;
  r.holomorphy_ok = r.holomorphy_residual < opt.tol;

  // a0 from the eta-mean of F on |xi| = 1 (m >= 0) and |xi| = |lambda| (m < 0)
  const int iv0 = nearest_row(gr, 0.0);
  auto xi_ring = [&](double u) {
    const std::vector<cplx> F = F_slice(g_hat, u, iv0, ka, kb);
    std::vector<cplx> ring(static_cast<std::size_t>(ka));
    for (int a = 0; a < ka; ++a) {
      cplx s = 0.0;
      for (int b = 0; b < kb; ++b) s += F[static_cast<std::size_t>(a) * kb + b];
      ring[static_cast<std::size_t>(a)] = s / static_cast<double>(kb);
    }
    return coeffs_from_circle_samples(ring, std::exp(u), -opt.xi_modes, opt.xi_modes);
  };
  const LaurentSeries1 outer = xi_ring(0.0);
  const LaurentSeries1 inner = xi_ring(sp.ell());
  r.a0 = LaurentSeries1::zeros(-opt.xi_modes, opt.xi_modes);
  r.a0.radius = 1.0;
  for (int m = -opt.xi_modes; m <= opt.xi_modes; ++m) r.a0.at(m) = m >= 0 ? outer.at(m) : inner.at(m);
  r.A = correction_A(r.a0, c, opt.resonance_tol, opt.drop_tol);
  for (const auto& x : r.A.coeffs) r.A_sup = std::max(r.A_sup, std::abs(x));

  r.g_tilde = g_hat.with_holomorphic(add_xi_row(g_hat.holomorphic(), r.A, -1.0));
  r.equivariance_before = section_equivariance_residual(g_hat, opt);
  r.equivariance_after = section_equivariance_residual(r.g_tilde, opt);
  return r;
}

}  // namespace tlab
