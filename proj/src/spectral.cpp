#include "toroidal_lab/spectral.hpp"

#include "toroidal_lab/errors.hpp"
#include "toroidal_lab/fft.hpp"

#include <cmath>

namespace tlab {

namespace {

double centered(double t) { return t - std::floor(t + 0.5); }

cplx expi(double x) { return {std::cos(x), std::sin(x)}; }

}  // namespace

double twist_phase(const DerivedConstants& c, int n, int j) {
  return centered(c.theta2_turns - centered(n * c.q_turns) - centered(j * c.lambda_turns));
}

double twist_wavenumber(const DerivedConstants& c, int n, int j, int l) {
  return -(twist_phase(c, n, j) + l) / c.im_tau;
}

int signed_index(int p, int K) { return 2 * p < K ? p : p - K; }

TwistedSpectral::TwistedSpectral(const LogPolarGrid& grid, const DerivedConstants& c) : grid_(grid), c_(c) {
  grid_.validate();
  if (grid_.u_max != 0.0 || std::abs(grid_.u_span + c.log_abs_lambda) > 1e-12 * std::abs(c.log_abs_lambda)) {
    throw DomainError("the u grid must span exactly one fundamental slab [log|lambda|, 0]");
  }
  k_.resize(static_cast<std::size_t>(grid_.n_u) * grid_.k_xi * grid_.k_eta);
  for (int il = 0; il < grid_.n_u; ++il)
    for (int ij = 0; ij < grid_.k_xi; ++ij)
      for (int in = 0; in < grid_.k_eta; ++in)
        k_[slot(il, ij, in)] = twist_wavenumber(c_, n_of(in), j_of(ij), l_of(il));
  omega_v.resize(static_cast<std::size_t>(grid_.n_v));
  for (int s = 0; s < grid_.n_v; ++s) {
    const bool nyq = grid_.n_v % 2 == 0 && 2 * s == grid_.n_v;
    omega_v[static_cast<std::size_t>(s)] = nyq ? 0.0 : kPi * signed_index(s, grid_.n_v) / grid_.v_half;
  }
}

bool TwistedSpectral::nyquist(int il, int ij, int in) const {
  return (grid_.n_u > 1 && 2 * il == grid_.n_u) || 2 * ij == grid_.k_xi || 2 * in == grid_.k_eta;
}

cplx TwistedSpectral::divisor(int il, int ij, int in) const {
  return 0.5 * cplx(-static_cast<double>(j_of(ij)), wavenumber(il, ij, in));
}

Field TwistedSpectral::to_modes(const Field& values) const {
  if (values.size() != grid_.size()) throw DomainError("field size does not match the grid");
  Field w = values;
  const auto d = dims();
  fft_axis(w, d, 2, -1);
  fft_axis(w, d, 3, -1);
  const std::size_t plane = static_cast<std::size_t>(grid_.k_xi) * grid_.k_eta;
  // untwist: remove exp(i k(n, j, 0) u) before the u transform
  for (int iv = 0; iv < grid_.n_v; ++iv)
    for (int iu = 0; iu < grid_.n_u; ++iu) {
      const double u = grid_.u(iu);
      cplx* row = &w[grid_.index(iv, iu, 0, 0)];
      for (std::size_t s = 0; s < plane; ++s) row[s] *= expi(-k_[s] * u);
    }
  fft_axis(w, d, 1, -1);
  const double scale = 1.0 / (static_cast<double>(grid_.n_u) * grid_.k_xi * grid_.k_eta);
  for (auto& x : w) x *= scale;
  return w;
}

Field TwistedSpectral::to_grid(const Field& modes) const {
  if (modes.size() != grid_.size()) throw DomainError("field size does not match the grid");
  Field w = modes;
  const auto d = dims();
  fft_axis(w, d, 1, +1);
  const std::size_t plane = static_cast<std::size_t>(grid_.k_xi) * grid_.k_eta;
  for (int iv = 0; iv < grid_.n_v; ++iv)
    for (int iu = 0; iu < grid_.n_u; ++iu) {
      const double u = grid_.u(iu);
      cplx* row = &w[grid_.index(iv, iu, 0, 0)];
      for (std::size_t s = 0; s < plane; ++s) row[s] *= expi(k_[s] * u);
    }
  fft_axis(w, d, 2, +1);
  fft_axis(w, d, 3, +1);
  return w;
}

Field TwistedSpectral::dv(const Field& modes) const {
  Field w = modes;
  const auto d = dims();
  fft_axis(w, d, 0, -1);
  const std::size_t stride = static_cast<std::size_t>(grid_.n_u) * grid_.k_xi * grid_.k_eta;
  const double scale = 1.0 / grid_.n_v;
  for (int s = 0; s < grid_.n_v; ++s) {
    const cplx m(0.0, omega_v[static_cast<std::size_t>(s)] * scale);
    cplx* row = &w[static_cast<std::size_t>(s) * stride];
    for (std::size_t t = 0; t < stride; ++t) row[t] *= m;
  }
  fft_axis(w, d, 0, +1);
  return w;
}

void TwistedSpectral::dbar(const Field& g_modes, Field& a_modes, Field& b_modes) const {
  b_modes = dv(g_modes);
  a_modes.assign(g_modes.size(), cplx(0.0));
  for (int iv = 0; iv < grid_.n_v; ++iv)
    for (int il = 0; il < grid_.n_u; ++il)
      for (int ij = 0; ij < grid_.k_xi; ++ij)
        for (int in = 0; in < grid_.k_eta; ++in) {
          const std::size_t i = grid_.index(iv, il, ij, in);
          if (nyquist(il, ij, in)) {
            b_modes[i] = 0.0;
            continue;
          }
          a_modes[i] = divisor(il, ij, in) * g_modes[i];
          b_modes[i] = 0.5 * (b_modes[i] - static_cast<double>(n_of(in)) * g_modes[i]);
        }
}

Field TwistedSpectral::closedness(const Field& a_modes, const Field& b_modes) const {
  Field r = dv(a_modes);
  for (int iv = 0; iv < grid_.n_v; ++iv)
    for (int il = 0; il < grid_.n_u; ++il)
      for (int ij = 0; ij < grid_.k_xi; ++ij)
        for (int in = 0; in < grid_.k_eta; ++in) {
          const std::size_t i = grid_.index(iv, il, ij, in);
          if (nyquist(il, ij, in)) {
            r[i] = 0.0;
            continue;
          }
          r[i] = r[i] - static_cast<double>(n_of(in)) * a_modes[i] - 2.0 * divisor(il, ij, in) * b_modes[i];
        }
  return r;
}

std::vector<cplx> TwistedSpectral::slice(const Field& modes, double u, int iv, int ka, int kb, int shift) const {
  if (ka < grid_.k_xi || kb < grid_.k_eta) throw AliasingError("slice resolution below the grid resolution");
  if (iv < 0 || iv >= grid_.n_v) throw DomainError("v index outside the grid");
  std::vector<cplx> out(static_cast<std::size_t>(ka) * kb, cplx(0.0));
  const double us = u + shift * ell();
  for (int ij = 0; ij < grid_.k_xi; ++ij)
    for (int in = 0; in < grid_.k_eta; ++in) {
      const int j = j_of(ij);
      const int n = n_of(in);
      cplx acc = 0.0;
      for (int il = 0; il < grid_.n_u; ++il) {
        if (nyquist(il, ij, in)) continue;
        acc += modes[grid_.index(iv, il, ij, in)] * expi(wavenumber(il, ij, in) * us);
      }
      if (shift != 0) {
        const double turns = centered(static_cast<double>(shift) * (centered(j * c_.lambda_turns) +
                                                                  centered(n * c_.q_turns)));
        acc *= unit_turns(turns);
      }
      const int a = ((j % ka) + ka) % ka;
      const int b = ((n % kb) + kb) % kb;
      out[static_cast<std::size_t>(a) * kb + b] = acc;
    }
  const std::vector<int> d{ka, kb};
  fft_axis(out, d, 0, +1);
  fft_axis(out, d, 1, +1);
  return out;
}

double l2_norm(const Field& f) {
  double s = 0.0;
  for (const auto& x : f) s += std::norm(x);
  return std::sqrt(s);
}

double sup_norm(const Field& f) {
  double s = 0.0;
  for (const auto& x : f) s = std::max(s, std::abs(x));
  return s;
}

}  // namespace tlab
