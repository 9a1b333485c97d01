#pragma once

// Truncated Laurent series in one and two variables.
// Index convention (project wide): F(xi, eta) = sum a_{n,m} xi^m eta^n,
// n indexes powers of eta and m powers of xi.

#include "toroidal_lab/group_core.hpp"

#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace tlab {

struct LaurentSeries1 {
  int m_min = 0;
  int m_max = -1;
  std::vector<cplx> coeffs;
  double radius = 1.0;  // radius of the extraction circle

  static LaurentSeries1 zeros(int m_min, int m_max);
  int size() const { return m_max - m_min + 1; }
  bool in_range(int m) const { return m >= m_min && m <= m_max; }
  cplx& at(int m) { return coeffs[static_cast<std::size_t>(m - m_min)]; }
  cplx at(int m) const { return in_range(m) ? coeffs[static_cast<std::size_t>(m - m_min)] : cplx(0.0); }
};

struct LaurentSeries2 {
  int n_min = 0;
  int n_max = -1;
  int m_min = 0;
  int m_max = -1;
  std::vector<cplx> coeffs;  // row n, column m

  static LaurentSeries2 zeros(int n_min, int n_max, int m_min, int m_max);
  int rows() const { return n_max - n_min + 1; }
  int cols() const { return m_max - m_min + 1; }
  bool in_range(int n, int m) const { return n >= n_min && n <= n_max && m >= m_min && m <= m_max; }
  cplx& at(int n, int m) { return coeffs[index(n, m)]; }
  cplx at(int n, int m) const { return in_range(n, m) ? coeffs[index(n, m)] : cplx(0.0); }
  LaurentSeries1 row(int n) const;
  double sup_abs() const;

 private:
  std::size_t index(int n, int m) const {
    return static_cast<std::size_t>(n - n_min) * static_cast<std::size_t>(cols()) + static_cast<std::size_t>(m - m_min);
  }
};

// Angular/radial sampling layout on (C*)^2 in log-polar coordinates:
// u_i = u_max - i*u_span/n_u, alpha_j = 2 pi j/k_xi, v_k = -v_half + 2 v_half k/n_v, beta_b = 2 pi b/k_eta.
struct LogPolarGrid {
  double u_max = 0.0;
  double u_span = 1.0;
  int n_u = 8;
  int k_xi = 16;
  double v_half = 3.5;
  int n_v = 256;
  int k_eta = 64;

  void validate() const;
  // AliasingError unless k_xi, k_eta >= 2*max + 1.
  void check_modes(int max_xi_mode, int max_eta_mode) const;
  double u(int i) const { return u_max - u_span * i / n_u; }
  double v(int k) const { return -v_half + 2.0 * v_half * k / n_v; }
  double alpha(int j) const { return kTwoPi * j / k_xi; }
  double beta(int b) const { return kTwoPi * b / k_eta; }
  std::size_t size() const {
    return static_cast<std::size_t>(n_v) * n_u * static_cast<std::size_t>(k_xi) * static_cast<std::size_t>(k_eta);
  }
  std::size_t index(int iv, int iu, int ia, int ib) const {
    return ((static_cast<std::size_t>(iv) * n_u + iu) * k_xi + ia) * static_cast<std::size_t>(k_eta) + ib;
  }
};

// a_n = r^{-n} (1/K) sum_k s_k exp(-2 pi i n k/K) for n in [n_min, n_max].
LaurentSeries1 coeffs_from_circle_samples(std::span<const cplx> samples, double radius, int n_min, int n_max);

cplx eval_series(const LaurentSeries1& s, cplx xi);
cplx eval_series(const LaurentSeries2& s, cplx xi, cplx eta);

struct DecaySlopes {
  std::optional<double> inner;  // fit over n <= 0
  std::optional<double> outer;  // fit over n >= 0
  bool all_zero = false;
};

// Least-squares slope of log|a_n| against n on each side of n = 0.
DecaySlopes decay_rate_fit(const LaurentSeries1& s);
// Along the eta index, using max_m |a_{n,m}| per row.
DecaySlopes decay_rate_fit(const LaurentSeries2& s);

// sqrt(sum w(n,m)^2 |a_{n,m}|^2), summed by increasing |n| then |m|.
double weighted_norm(const LaurentSeries2& s, const std::function<double(int, int)>& weight);
double weighted_norm(const LaurentSeries1& s, const std::function<double(int)>& weight);

}  // namespace tlab
