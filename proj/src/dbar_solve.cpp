#include "toroidal_lab/dbar_solve.hpp"

#include "toroidal_lab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace tlab {

namespace {

bool has_terms(const LaurentSeries2& h) { return h.rows() > 0 && h.cols() > 0; }

}  // namespace

CoverSection::CoverSection(std::shared_ptr<const TwistedSpectral> spectral, Field modes, LaurentSeries2 holomorphic)
    : spectral_(std::move(spectral)), modes_(std::move(modes)), hol_(std::move(holomorphic)) {
  if (!spectral_) throw DomainError("section without a spectral context");
  if (modes_.size() != spectral_->grid().size()) throw DomainError("mode array does not match the grid");
  spectral_->dbar(modes_, a_modes_, b_modes_);
}

CoverSection CoverSection::with_holomorphic(LaurentSeries2 h) const {
  CoverSection s = *this;
  s.hol_ = std::move(h);
  return s;
}

Field CoverSection::grid_values() const {
  Field g = spectral_->to_grid(modes_);
  if (!has_terms(hol_)) return g;
  const LogPolarGrid& gr = spectral_->grid();
  for (int iv = 0; iv < gr.n_v; ++iv)
    for (int iu = 0; iu < gr.n_u; ++iu)
      for (int ia = 0; ia < gr.k_xi; ++ia)
        for (int ib = 0; ib < gr.k_eta; ++ib) {
          const CoverPoint p = CoverPoint::from_log_polar(gr.u(iu), gr.alpha(ia), gr.v(iv), gr.beta(ib));
          g[gr.index(iv, iu, ia, ib)] += eval_series(hol_, p.xi(), p.eta());
        }
  return g;
}

std::vector<cplx> CoverSection::slice(double u, int iv, int ka, int kb, int shift) const {
  std::vector<cplx> out = spectral_->slice(modes_, u, iv, ka, kb, shift);
  if (!has_terms(hol_)) return out;
  const DerivedConstants& c = spectral_->constants();
  const double v = spectral_->grid().v(iv);
  for (int a = 0; a < ka; ++a)
    for (int b = 0; b < kb; ++b) {
      const CoverPoint p = sigma_apply(CoverPoint::from_log_polar(u, kTwoPi * a / ka, v, kTwoPi * b / kb), shift, c);
      out[static_cast<std::size_t>(a) * kb + b] += eval_series(hol_, p.xi(), p.eta());
    }
  return out;
}

std::pair<std::vector<cplx>, std::vector<cplx>> CoverSection::dbar_slice(double u, int iv, int ka, int kb,
                                                                         int shift) const {
  return {spectral_->slice(a_modes_, u, iv, ka, kb, shift), spectral_->slice(b_modes_, u, iv, ka, kb, shift)};
}

namespace {

struct Prepared {
  Field A, B;
  double closedness = 0.0;
};

Prepared prepare(const Form01& f, const DbarSolveOptions& opt) {
  if (!f.equivariant) throw DomainError("solve_dbar_modes needs sigma-equivariant data");
  const TwistedSpectral& sp = *f.spectral;
  const LogPolarGrid& gr = sp.grid();
  Prepared p{sp.to_modes(f.a), sp.to_modes(f.b), 0.0};
  const Field C = sp.closedness(p.A, p.B);
  const Field dA = sp.dv(p.A);
  double num = 0.0, ref = 0.0;
  for (int iv = 0; iv < gr.n_v; ++iv)
    for (int il = 0; il < gr.n_u; ++il)
      for (int ij = 0; ij < gr.k_xi; ++ij)
        for (int in = 0; in < gr.k_eta; ++in) {
          const std::size_t i = gr.index(iv, il, ij, in);
          num += std::norm(C[i]);
          const double t = std::abs(dA[i]) + std::abs(static_cast<double>(sp.n_of(in)) * p.A[i]) +
                           std::abs(2.0 * sp.divisor(il, ij, in) * p.B[i]);
          ref += t * t;
        }
  p.closedness = ref > 0.0 ? std::sqrt(num / ref) : 0.0;
  if (p.closedness > opt.closedness_tol) {
    throw DomainError("form is not dbar-closed (relative residual " + std::to_string(p.closedness) + ")");
  }
  return p;
}

// Divides the alpha-u equation mode by mode; fills everything but the residuals.
DbarSolution divide(const Form01& f, const Prepared& p, const DbarSolveOptions& opt) {
  const TwistedSpectral& sp = *f.spectral;
  const LogPolarGrid& gr = sp.grid();
  const Field& A = p.A;
  const Field& B = p.B;
  DbarSolution sol;
  sol.closedness = p.closedness;
  const std::size_t per_v = static_cast<std::size_t>(gr.n_u) * gr.k_xi * gr.k_eta;
  Field G(A.size(), cplx(0.0));
  sol.min_divisor = std::numeric_limits<double>::infinity();
  const double data_scale = std::max(sup_norm(A), sup_norm(B));
  for (int il = 0; il < gr.n_u; ++il)
    for (int ij = 0; ij < gr.k_xi; ++ij)
      for (int in = 0; in < gr.k_eta; ++in) {
        const std::size_t s = sp.mode_slot(il, ij, in);
        double data = 0.0;
        for (int iv = 0; iv < gr.n_v; ++iv) {
          const std::size_t i = static_cast<std::size_t>(iv) * per_v + s;
          data = std::max({data, std::abs(A[i]), std::abs(B[i])});
        }
        const int n = sp.n_of(in), j = sp.j_of(ij), l = sp.l_of(il);
        if (sp.nyquist(il, ij, in)) {
          if (data > opt.drop_tol * std::max(1.0, data_scale)) {
            throw AliasingError("form data on the Nyquist mode (n, j, l) = (" + std::to_string(n) + ", " +
                                std::to_string(j) + ", " + std::to_string(l) + ")");
          }
          continue;
        }
        if (std::abs(n) >= opt.trunc || data == 0.0) continue;
        const cplx D = sp.divisor(il, ij, in);
        const double ad = std::abs(D);
        if (ad < opt.resonance_tol) {
          if (data >= opt.drop_tol) throw ResonantObstruction("solve_dbar_modes", {n, j, l}, data, ad);
          sol.skipped.push_back({{n, j, l}, data, ad});
          continue;
        }
        if (data >= opt.drop_tol && ad < sol.min_divisor) {
          sol.min_divisor = ad;
          sol.min_divisor_mode = {n, j, l};
        }
        for (int iv = 0; iv < gr.n_v; ++iv) {
          const std::size_t i = static_cast<std::size_t>(iv) * per_v + s;
          G[i] = A[i] / D;
        }
      }
  if (!std::isfinite(sol.min_divisor)) sol.min_divisor = 0.0;
  sol.g = CoverSection(f.spectral, std::move(G));
  return sol;
}

}  // namespace

DbarSolution solve_dbar_modes(const Form01& f, const DbarSolveOptions& opt) {
  const Prepared p = prepare(f, opt);
  DbarSolution sol = divide(f, p, opt);
  const TwistedSpectral& sp = *f.spectral;
  const LogPolarGrid& gr = sp.grid();
  Field Ag, Bg;
  sp.dbar(sol.g.modes(), Ag, Bg);
  const double fnorm = std::sqrt(std::pow(l2_norm(p.A), 2) + std::pow(l2_norm(p.B), 2));
  std::map<int, double> per_n;
  for (int iv = 0; iv < gr.n_v; ++iv)
    for (int il = 0; il < gr.n_u; ++il)
      for (int ij = 0; ij < gr.k_xi; ++ij)
        for (int in = 0; in < gr.k_eta; ++in) {
          const std::size_t i = gr.index(iv, il, ij, in);
          per_n[sp.n_of(in)] += std::norm(Ag[i] - p.A[i]) + std::norm(Bg[i] - p.B[i]);
        }
  for (const auto& [n, r] : per_n) sol.mode_residuals.push_back({n, fnorm > 0.0 ? std::sqrt(r) / fnorm : std::sqrt(r)});
  sol.dbar_residual = dbar_residual(sol.g, f);
  return sol;
}

double dbar_residual(const CoverSection& g, const Form01& f) {
  const TwistedSpectral& sp = g.spectral();
  Field a, b;
  sp.dbar(g.modes(), a, b);
  a = sp.to_grid(a);
  b = sp.to_grid(b);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += std::norm(a[i] - f.a[i]) + std::norm(b[i] - f.b[i]);
    den += std::norm(f.a[i]) + std::norm(f.b[i]);
  }
  return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

std::vector<TruncationRow> truncation_convergence_study(const Form01& f, const std::vector<int>& truncs,
                                                         DbarSolveOptions opt) {
  std::vector<TruncationRow> rows;
  const Prepared p = prepare(f, opt);
  for (int N : truncs) {
    opt.trunc = N;
    rows.push_back({N, dbar_residual(divide(f, p, opt).g, f)});
  }
  return rows;
}

double support_decay_report(const CoverSection& g, double K, double margin) {
  const LogPolarGrid& gr = g.spectral().grid();
  const Field vals = g.grid_values();
  double sup = 0.0;
  const std::size_t per_v = static_cast<std::size_t>(gr.n_u) * gr.k_xi * gr.k_eta;
  for (int iv = 0; iv < gr.n_v; ++iv) {
    if (!(std::abs(gr.v(iv)) > K + margin)) continue;
    for (std::size_t s = 0; s < per_v; ++s) sup = std::max(sup, std::abs(vals[static_cast<std::size_t>(iv) * per_v + s]));
  }
  return sup;
}

}  // namespace tlab
