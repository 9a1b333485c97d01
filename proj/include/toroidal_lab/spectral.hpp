#pragma once

// Spectral calculus for sigma-equivariant functions on the covering (p = theta1 = 0).
// Equivariant modes are exp(i n beta + i j alpha + i k u) with
//   k(n, j, l) = -(phi(n, j) + l) / Im tau,  phi = wrap(theta2 - n q - j Re tau) in [-1/2, 1/2),
// so that sigma^* multiplies each of them by nu. In the log frame
//   dbar g = a dxibar/xibar + b detabar/etabar,  a = (d_u + i d_alpha) g / 2,  b = (d_v + i d_beta) g / 2.
// Fields are stored on a LogPolarGrid as [v][u][alpha][beta]; the mode layout is [v][l][j][n]
// with v kept physical.

#include "toroidal_lab/laurent.hpp"

#include <memory>
#include <vector>

namespace tlab {

using Field = std::vector<cplx>;

// phi(n, j) in turns.
double twist_phase(const DerivedConstants& c, int n, int j);
double twist_wavenumber(const DerivedConstants& c, int n, int j, int l);

// Index p of a length-K FFT axis as a signed frequency; K/2 maps to -K/2.
int signed_index(int p, int K);

class TwistedSpectral {
 public:
  // The grid must cover one period in u: u_max = 0, u_span = |log|lambda||.
  TwistedSpectral(const LogPolarGrid& grid, const DerivedConstants& c);

  const LogPolarGrid& grid() const { return grid_; }
  const DerivedConstants& constants() const { return c_; }
  double ell() const { return c_.log_abs_lambda; }

  // Mode labels of the flat position (il, ij, in).
  int l_of(int il) const { return signed_index(il, grid_.n_u); }
  int j_of(int ij) const { return signed_index(ij, grid_.k_xi); }
  int n_of(int in) const { return signed_index(in, grid_.k_eta); }
  bool nyquist(int il, int ij, int in) const;
  double wavenumber(int il, int ij, int in) const { return k_[slot(il, ij, in)]; }
  // (i k - j)/2, the divisor of the alpha-u equation.
  cplx divisor(int il, int ij, int in) const;

  Field to_modes(const Field& values) const;
  Field to_grid(const Field& modes) const;
  // d/dv by a periodic FFT along v (the band is wide enough that data vanish near its ends).
  Field dv(const Field& modes) const;
  void dbar(const Field& g_modes, Field& a_modes, Field& b_modes) const;
  // (d_v + i d_beta) a - (d_u + i d_alpha) b in mode space.
  Field closedness(const Field& a_modes, const Field& b_modes) const;

  // Values at sigma^shift(u, 2 pi a/ka, v_iv, 2 pi b/kb) for a < ka, b < kb; ka >= k_xi, kb >= k_eta.
  std::vector<cplx> slice(const Field& modes, double u, int iv, int ka, int kb, int shift) const;

  std::size_t mode_slot(int il, int ij, int in) const { return slot(il, ij, in); }

 private:
  std::size_t slot(int il, int ij, int in) const {
    return (static_cast<std::size_t>(il) * grid_.k_xi + ij) * grid_.k_eta + in;
  }
  std::vector<int> dims() const { return {grid_.n_v, grid_.n_u, grid_.k_xi, grid_.k_eta}; }

  LogPolarGrid grid_;
  DerivedConstants c_;
  std::vector<double> k_;       // per (l, j, n)
  std::vector<double> omega_v;  // v wavenumbers, Nyquist zeroed
};

double l2_norm(const Field& f);
double sup_norm(const Field& f);

}  // namespace tlab
