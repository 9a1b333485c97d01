#include "toroidal_lab/fixtures.hpp"

#include "toroidal_lab/errors.hpp"
#include "toroidal_lab/fft.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

namespace tlab {

namespace {

cplx expi(double x) { return {std::cos(x), std::sin(x)}; }

using TermMap = std::map<std::pair<int, int>, AngularTerm>;

std::pair<cplx, cplx> synthesize(const std::vector<AngularTerm>& terms, double alpha, double beta) {
  cplx a = 0.0, b = 0.0;
  for (const auto& t : terms) {
    const cplx e = expi(t.j * alpha + t.n * beta);
    a += t.a * e;
    b += t.b * e;
  }
  return {a, b};
}

class ZeroSource final : public FormSource {
 public:
  std::pair<cplx, cplx> components(const CoverPoint&) const override { return {0.0, 0.0}; }
  std::vector<AngularTerm> angular(double, double) const override { return {}; }
  double support() const override { return 2.0; }
  bool equivariant() const override { return true; }
  bool norm_invariant() const override { return true; }
  int max_xi_mode() const override { return 0; }
  int max_eta_mode() const override { return 0; }
};

class ExactSource final : public FormSource {
 public:
  ExactSource(ExactRecipe r, const DerivedConstants& c) : r_(std::move(r)), c_(c) {
    if (static_cast<int>(r_.rho.size()) != 2 * r_.n_max + 1) throw DomainError("rho must have 2 n_max + 1 entries");
    TermMap keys;
    for (int n = -r_.n_max; n <= r_.n_max; ++n) {
      if (r_.rho[static_cast<std::size_t>(n + r_.n_max)] == 0.0) continue;
      for (const auto& t : r_.terms) keys[{t.j, n}] = AngularTerm{t.j, n, 0.0, 0.0};
    }
    std::map<std::pair<int, int>, std::size_t> where;
    for (const auto& [k, t] : keys) {
      where[k] = layout_.size();
      layout_.push_back(t);
    }
    for (int n = -r_.n_max; n <= r_.n_max; ++n) {
      const double rho = r_.rho[static_cast<std::size_t>(n + r_.n_max)];
      if (rho == 0.0) continue;
      for (const auto& t : r_.terms)
        waves_.push_back({where[{t.j, n}], twist_wavenumber(c_, n, t.j, t.l), rho * t.c});
    }
  }

  std::vector<AngularTerm> angular(double u, double v) const override {
    const double chi = r_.chi.value(v);
    const double dchi = r_.chi.derivative(v);
    if (chi == 0.0 && dchi == 0.0) return {};
    std::vector<AngularTerm> out = blank();
    for (const auto& w : waves_) {
      const cplx e = w.amp * expi(w.k * u);
      auto& slot = out[w.slot];
      slot.a += 0.5 * cplx(-static_cast<double>(slot.j), w.k) * chi * e;
      slot.b += 0.5 * (dchi - slot.n * chi) * e;
    }
    return out;
  }

  std::vector<AngularTerm> potential_angular(double u, double v) const override {
    const double chi = r_.chi.value(v);
    if (chi == 0.0) return {};
    std::vector<AngularTerm> out = blank();
    for (const auto& w : waves_) out[w.slot].a += w.amp * chi * expi(w.k * u);
    return out;
  }

  std::pair<cplx, cplx> components(const CoverPoint& p) const override {
    return synthesize(angular(p.u, p.v), p.alpha, p.beta);
  }
  cplx potential(const CoverPoint& p) const override {
    return synthesize(potential_angular(p.u, p.v), p.alpha, p.beta).first;
  }
  double support() const override { return r_.chi.half_width; }
  bool equivariant() const override { return true; }
  bool norm_invariant() const override { return true; }
  int max_xi_mode() const override {
    int m = 0;
    for (const auto& t : r_.terms) m = std::max(m, std::abs(t.j));
    return m;
  }
  int max_eta_mode() const override { return r_.n_max; }

 private:
  struct Wave {
    std::size_t slot;
    double k;
    cplx amp;
  };
  std::vector<AngularTerm> blank() const { return layout_; }

  ExactRecipe r_;
  DerivedConstants c_;
  std::vector<AngularTerm> layout_;  // distinct (j, n), sorted
  std::vector<Wave> waves_;
};

class CechSource final : public FormSource {
 public:
  explicit CechSource(CechRecipe r) : r_(std::move(r)) {}

  std::vector<AngularTerm> angular(double u, double v) const override {
    const double dchi = r_.chi.derivative(v);
    std::vector<AngularTerm> out;
    if (dchi == 0.0) return out;
    for (int m = r_.s.m_min; m <= r_.s.m_max; ++m)
      for (int n = r_.s.n_min; n <= r_.s.n_max; ++n) {
        const cplx s = r_.s.at(n, m);
        if (s == cplx(0.0)) continue;
        out.push_back({m, n, 0.0, 0.5 * dchi * s * std::exp(m * u + n * v)});
      }
    return out;
  }

  std::vector<AngularTerm> potential_angular(double u, double v) const override {
    const double chi = r_.chi.value(v);
    std::vector<AngularTerm> out;
    if (chi == 0.0) return out;
    for (int m = r_.s.m_min; m <= r_.s.m_max; ++m)
      for (int n = r_.s.n_min; n <= r_.s.n_max; ++n) {
        const cplx s = r_.s.at(n, m);
        if (s != cplx(0.0)) out.push_back({m, n, chi * s * std::exp(m * u + n * v), 0.0});
      }
    return out;
  }

  std::pair<cplx, cplx> components(const CoverPoint& p) const override {
    return synthesize(angular(p.u, p.v), p.alpha, p.beta);
  }
  cplx potential(const CoverPoint& p) const override {
    return synthesize(potential_angular(p.u, p.v), p.alpha, p.beta).first;
  }
  double support() const override { return r_.chi.half_width; }
  bool equivariant() const override { return false; }
  bool norm_invariant() const override {
    int count = 0;
    bool xi_free = true;
    for (int m = r_.s.m_min; m <= r_.s.m_max; ++m)
      for (int n = r_.s.n_min; n <= r_.s.n_max; ++n)
        if (r_.s.at(n, m) != cplx(0.0)) {
          ++count;
          xi_free = xi_free && m == 0;
        }
    return count <= 1 && xi_free;
  }
  int max_xi_mode() const override { return std::max(std::abs(r_.s.m_min), std::abs(r_.s.m_max)); }
  int max_eta_mode() const override { return std::max(std::abs(r_.s.n_min), std::abs(r_.s.n_max)); }

 private:
  CechRecipe r_;
};

void place(std::vector<cplx>& plane, int ka, int kb, int j, int n, cplx value) {
  const int a = ((j % ka) + ka) % ka;
  const int b = ((n % kb) + kb) % kb;
  plane[static_cast<std::size_t>(a) * kb + b] += value;
}

}  // namespace

double BumpProfile::value(double v) const {
  const double x = v / half_width;
  if (std::abs(x) >= 1.0) return 0.0;
  const double s = 1.0 - x * x;
  if (kind == Kind::c2) return s * s * s;
  return std::exp(1.0 - 1.0 / s);
}

double BumpProfile::derivative(double v) const {
  const double x = v / half_width;
  if (std::abs(x) >= 1.0) return 0.0;
  const double s = 1.0 - x * x;
  if (kind == Kind::c2) return -6.0 * x * s * s / half_width;
  return std::exp(1.0 - 1.0 / s) * (-2.0 * x / (s * s)) / half_width;
}

ExactRecipe ExactRecipe::smooth(int n_max) {
  ExactRecipe r;
  r.n_max = n_max;
  for (int n = -n_max; n <= n_max; ++n) r.rho.push_back(std::ldexp(1.0, -std::abs(n)));
  return r;
}

ExactRecipe ExactRecipe::rough(int n_max) {
  ExactRecipe r;
  r.n_max = n_max;
  for (int n = -n_max; n <= n_max; ++n) r.rho.push_back(1.0 / ((1.0 + std::abs(n)) * (1.0 + std::abs(n))));
  return r;
}

CechRecipe CechRecipe::eta_power(int n) {
  CechRecipe r;
  r.s = LaurentSeries2::zeros(n, n, 0, 0);
  r.s.at(n, 0) = 1.0;
  return r;
}

Recipe Recipe::from_name(const std::string& name) {
  Recipe r;
  r.name = name;
  if (name == "zero") {
    r.kind = Kind::zero;
  } else if (name == "smooth" || name == "exact") {
    r.kind = Kind::exact;
    r.exact = ExactRecipe::smooth();
  } else if (name == "rough") {
    r.kind = Kind::exact;
    r.exact = ExactRecipe::rough();
  } else if (name == "cech") {
    r.kind = Kind::cech;
  } else {
    throw DomainError("unknown recipe '" + name + "' (zero, smooth, rough, cech)");
  }
  return r;
}

std::shared_ptr<const FormSource> make_source(const Recipe& r, const DerivedConstants& c) {
  switch (r.kind) {
    case Recipe::Kind::zero:
      return std::make_shared<ZeroSource>();
    case Recipe::Kind::exact:
      return std::make_shared<ExactSource>(r.exact, c);
    case Recipe::Kind::cech:
      return std::make_shared<CechSource>(r.cech);
  }
  throw DomainError("unknown recipe kind");
}

Form01 build_test_form(const DerivedConstants& c, const LogPolarGrid& grid, const Recipe& r) {
  Form01 f;
  f.spectral = std::make_shared<TwistedSpectral>(grid, c);
  f.source = make_source(r, c);
  f.support = f.source->support();
  f.equivariant = f.source->equivariant();
  f.recipe = r.name;
  if (f.support >= grid.v_half) throw DomainError("cutoff band exceeds the v band of the grid");
  grid.check_modes(f.source->max_xi_mode(), f.source->max_eta_mode());

  const int ka = grid.k_xi;
  const int kb = grid.k_eta;
  const std::size_t plane = static_cast<std::size_t>(ka) * kb;
  f.a.assign(grid.size(), cplx(0.0));
  f.b.assign(grid.size(), cplx(0.0));
  const bool has_potential = r.kind != Recipe::Kind::zero;
  if (has_potential) f.potential.assign(grid.size(), cplx(0.0));
  std::vector<cplx> pa(plane), pb(plane), pg(plane);
  const std::vector<int> d{ka, kb};
  for (int iv = 0; iv < grid.n_v; ++iv) {
    for (int iu = 0; iu < grid.n_u; ++iu) {
      const double u = grid.u(iu);
      const double v = grid.v(iv);
      std::fill(pa.begin(), pa.end(), cplx(0.0));
      std::fill(pb.begin(), pb.end(), cplx(0.0));
      std::fill(pg.begin(), pg.end(), cplx(0.0));
      for (const auto& t : f.source->angular(u, v)) {
        place(pa, ka, kb, t.j, t.n, t.a);
        place(pb, ka, kb, t.j, t.n, t.b);
      }
      fft_axis(pa, d, 0, +1);
      fft_axis(pa, d, 1, +1);
      fft_axis(pb, d, 0, +1);
      fft_axis(pb, d, 1, +1);
      std::copy(pa.begin(), pa.end(), f.a.begin() + static_cast<std::ptrdiff_t>(grid.index(iv, iu, 0, 0)));
      std::copy(pb.begin(), pb.end(), f.b.begin() + static_cast<std::ptrdiff_t>(grid.index(iv, iu, 0, 0)));
      if (has_potential) {
        for (const auto& t : f.source->potential_angular(u, v)) place(pg, ka, kb, t.j, t.n, t.a);
        fft_axis(pg, d, 0, +1);
        fft_axis(pg, d, 1, +1);
        std::copy(pg.begin(), pg.end(), f.potential.begin() + static_cast<std::ptrdiff_t>(grid.index(iv, iu, 0, 0)));
      }
      if (std::abs(v) >= f.support) {
        for (std::size_t s = 0; s < plane; ++s) f.support_leak = std::max({f.support_leak, std::abs(pa[s]), std::abs(pb[s])});
      }
    }
  }
  return f;
}

double form_equivariance_residual(const FormSource& f, const DerivedConstants& c, int count, unsigned seed) {
  std::mt19937_64 rng(seed);
  const double ell = c.log_abs_lambda;
  std::uniform_real_distribution<double> U(2.0 * ell, -ell), V(-f.support(), f.support()), A(0.0, kTwoPi);
  double worst = 0.0;
  for (int i = 0; i < count; ++i) {
    const CoverPoint p = CoverPoint::from_log_polar(U(rng), A(rng), V(rng), A(rng));
    const auto [a0, b0] = f.components(p);
    const auto [a1, b1] = f.components(sigma_apply(p, 1, c));
    worst = std::max({worst, std::abs(a1 - c.nu * a0), std::abs(b1 - c.nu * b0)});
  }
  return worst;
}

double closedness_check(const FormSource& f, int count, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(-1.0, 1.0), V(-f.support(), f.support());
  constexpr double h = 1e-3;
  // fourth-order central difference of the angular coefficients
  auto diff = [&](auto&& at) {
    TermMap out;
    const double w[4] = {1.0 / 12.0, -2.0 / 3.0, 2.0 / 3.0, -1.0 / 12.0};
    const double o[4] = {-2.0, -1.0, 1.0, 2.0};
    for (int s = 0; s < 4; ++s)
      for (const auto& t : at(o[s] * h)) {
        auto& slot = out[{t.j, t.n}];
        slot.j = t.j;
        slot.n = t.n;
        slot.a += w[s] / h * t.a;
        slot.b += w[s] / h * t.b;
      }
    return out;
  };
  double worst = 0.0, scale = 0.0;
  for (int i = 0; i < count; ++i) {
    const double u = U(rng), v = V(rng);
    TermMap base;
    for (const auto& t : f.angular(u, v)) {
      base[{t.j, t.n}] = t;
      scale = std::max({scale, std::abs(t.a), std::abs(t.b)});
    }
    const TermMap du = diff([&](double s) { return f.angular(u + s, v); });
    const TermMap dv = diff([&](double s) { return f.angular(u, v + s); });
    TermMap keys = base;
    for (const auto& [k, t] : du) keys[k];
    for (const auto& [k, t] : dv) keys[k];
    for (const auto& [k, t] : keys) {
      const auto get = [&](const TermMap& m) {
        auto it = m.find(k);
        return it == m.end() ? AngularTerm{} : it->second;
      };
      const AngularTerm b0 = get(base), bu = get(du), bv = get(dv);
      // (d_u + i d_alpha) b - (d_v + i d_beta) a
      const cplx r = bu.b - static_cast<double>(k.first) * b0.b - (bv.a - static_cast<double>(k.second) * b0.a);
      worst = std::max(worst, std::abs(r));
    }
  }
  return scale > 0.0 ? worst / scale : worst;
}

}  // namespace tlab
