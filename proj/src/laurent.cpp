#include "toroidal_lab/laurent.hpp"

#include "toroidal_lab/errors.hpp"
#include "toroidal_lab/fft.hpp"

#include <algorithm>
#include <cmath>

namespace tlab {

namespace {

bool power_of_two(int k) { return k > 0 && (k & (k - 1)) == 0; }

// Horner in z over coefficients c[lo..hi] (lo <= 0 <= hi not required).
cplx horner(const std::vector<cplx>& c, int lo, int hi, cplx z) {
  if (hi < lo) return 0.0;
  cplx pos = 0.0;
  for (int k = hi; k >= std::max(lo, 0); --k) pos = pos * z + c[static_cast<std::size_t>(k - lo)];
  if (std::max(lo, 0) > 0) pos *= std::pow(z, std::max(lo, 0));
  cplx neg = 0.0;
  if (lo < 0) {
    const cplx w = 1.0 / z;
    const int top = std::min(hi, -1);
    for (int k = lo; k <= top; ++k) neg = neg * w + c[static_cast<std::size_t>(k - lo)];
    neg *= std::pow(w, -top);
  }
  return pos + neg;
}

std::optional<double> fit_slope(const std::vector<std::pair<double, double>>& pts) {
  if (pts.size() < 2) return std::nullopt;
  double sx = 0, sy = 0;
  for (const auto& [x, y] : pts) {
    sx += x;
    sy += y;
  }
  const double mx = sx / pts.size();
  const double my = sy / pts.size();
  double sxx = 0, sxy = 0;
  for (const auto& [x, y] : pts) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
  }
  return sxy / sxx;
}

DecaySlopes fit_sides(const std::vector<std::pair<int, double>>& mags) {
  constexpr double kFloor = 1e-300;
  std::vector<std::pair<double, double>> in, out;
  bool any = false;
  for (const auto& [n, a] : mags) {
    if (!(a > kFloor)) continue;
    any = true;
    if (n <= 0) in.emplace_back(n, std::log(a));
    if (n >= 0) out.emplace_back(n, std::log(a));
  }
  if (!any) throw DegenerateFit("all coefficients are below 1e-300");
  DecaySlopes s;
  s.inner = fit_slope(in);
  s.outer = fit_slope(out);
  if (!s.inner && !s.outer) throw DegenerateFit("too few nonzero coefficients on either side to fit a slope");
  return s;
}

template <class F>
void by_abs_order(int lo, int hi, F&& f) {
  const int top = std::max(std::abs(lo), std::abs(hi));
  for (int k = 0; k <= top; ++k) {
    if (-k >= lo && -k <= hi) f(-k);
    if (k != 0 && k >= lo && k <= hi) f(k);
  }
}

}  // namespace

LaurentSeries1 LaurentSeries1::zeros(int m_min, int m_max) {
  LaurentSeries1 s;
  s.m_min = m_min;
  s.m_max = m_max;
  s.coeffs.assign(static_cast<std::size_t>(std::max(0, m_max - m_min + 1)), cplx(0.0));
  return s;
}

LaurentSeries2 LaurentSeries2::zeros(int n_min, int n_max, int m_min, int m_max) {
  LaurentSeries2 s;
  s.n_min = n_min;
  s.n_max = n_max;
  s.m_min = m_min;
  s.m_max = m_max;
  s.coeffs.assign(static_cast<std::size_t>(std::max(0, s.rows())) * static_cast<std::size_t>(std::max(0, s.cols())),
                  cplx(0.0));
  return s;
}

LaurentSeries1 LaurentSeries2::row(int n) const {
  LaurentSeries1 r = LaurentSeries1::zeros(m_min, m_max);
  for (int m = m_min; m <= m_max; ++m) r.at(m) = at(n, m);
  return r;
}

double LaurentSeries2::sup_abs() const {
  double s = 0.0;
  for (const auto& c : coeffs) s = std::max(s, std::abs(c));
  return s;
}

void LogPolarGrid::validate() const {
  if (n_u < 1 || n_v < 2) throw DomainError("grid needs n_u >= 1 and n_v >= 2");
  if (!power_of_two(k_xi) || !power_of_two(k_eta)) throw DomainError("angular counts must be powers of two");
  if (!(u_span > 0.0) || !(v_half > 0.0)) throw DomainError("grid extents must be positive");
}

void LogPolarGrid::check_modes(int max_xi_mode, int max_eta_mode) const {
  if (k_xi < 2 * max_xi_mode + 1 || k_eta < 2 * max_eta_mode + 1) {
    throw AliasingError("angular resolution too small for the retained modes");
  }
}

LaurentSeries1 coeffs_from_circle_samples(std::span<const cplx> samples, double radius, int n_min, int n_max) {
  const int K = static_cast<int>(samples.size());
  const int top = std::max(std::abs(n_min), std::abs(n_max));
  if (K < 2 * top + 1) {
    throw AliasingError("need at least " + std::to_string(2 * top + 1) + " samples on the circle, got " +
                        std::to_string(K));
  }
  if (!(radius > 0.0)) throw DomainError("circle radius must be positive");
  for (const auto& s : samples) {
    if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) throw DomainError("non-finite circle sample");
  }
  std::vector<cplx> work(samples.begin(), samples.end());
  fft_1d(work, -1);
  LaurentSeries1 out = LaurentSeries1::zeros(n_min, n_max);
  out.radius = radius;
  for (int n = n_min; n <= n_max; ++n) {
    const int idx = ((n % K) + K) % K;
    out.at(n) = work[static_cast<std::size_t>(idx)] / static_cast<double>(K) * std::pow(radius, -n);
  }
  return out;
}

cplx eval_series(const LaurentSeries1& s, cplx xi) { return horner(s.coeffs, s.m_min, s.m_max, xi); }

cplx eval_series(const LaurentSeries2& s, cplx xi, cplx eta) {
  std::vector<cplx> rows(static_cast<std::size_t>(std::max(0, s.rows())));
  for (int n = s.n_min; n <= s.n_max; ++n) rows[static_cast<std::size_t>(n - s.n_min)] = eval_series(s.row(n), xi);
  return horner(rows, s.n_min, s.n_max, eta);
}

DecaySlopes decay_rate_fit(const LaurentSeries1& s) {
  std::vector<std::pair<int, double>> mags;
  for (int m = s.m_min; m <= s.m_max; ++m) mags.emplace_back(m, std::abs(s.at(m)));
  return fit_sides(mags);
}

DecaySlopes decay_rate_fit(const LaurentSeries2& s) {
  std::vector<std::pair<int, double>> mags;
  for (int n = s.n_min; n <= s.n_max; ++n) {
    double mx = 0.0;
    for (int m = s.m_min; m <= s.m_max; ++m) mx = std::max(mx, std::abs(s.at(n, m)));
    mags.emplace_back(n, mx);
  }
  return fit_sides(mags);
}

double weighted_norm(const LaurentSeries2& s, const std::function<double(int, int)>& weight) {
  double acc = 0.0;
  by_abs_order(s.n_min, s.n_max, [&](int n) {
    by_abs_order(s.m_min, s.m_max, [&](int m) {
      const double w = weight(n, m);
      acc += w * w * std::norm(s.at(n, m));
    });
  });
  return std::sqrt(acc);
}

double weighted_norm(const LaurentSeries1& s, const std::function<double(int)>& weight) {
  double acc = 0.0;
  by_abs_order(s.m_min, s.m_max, [&](int m) {
    const double w = weight(m);
    acc += w * w * std::norm(s.at(m));
  });
  return std::sqrt(acc);
}

}  // namespace tlab
