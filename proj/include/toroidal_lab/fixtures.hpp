#pragma once

// Test (0,1)-forms on the covering in the log frame f = a dxibar/xibar + b detabar/etabar.
//   exact: f = dbar g0 with g0 = chi(v) sum_n rho_n sum_terms c e^{i n beta + i j alpha + i k(n,j,l) u},
//          an equivariant potential cut off in v = log|eta|;
//   cech:  f = s dbar chi with s holomorphic (a Laurent polynomial), not equivariant in general;
//   zero.

#include "toroidal_lab/spectral.hpp"

#include <memory>
#include <string>
#include <vector>

namespace tlab {

struct BumpProfile {
  enum class Kind { smooth, c2 };
  Kind kind = Kind::smooth;
  double half_width = 2.0;  // supported in |v| < half_width

  double value(double v) const;
  double derivative(double v) const;
};

struct ModeTerm {
  int j = 0;  // xi-angular mode
  int l = 0;  // u-branch label
  cplx c{1.0, 0.0};
};

struct ExactRecipe {
  BumpProfile chi;
  std::vector<ModeTerm> terms{{0, 0, {1.0, 0.0}}, {1, 0, {0.5, 0.0}}, {-1, 1, {0.0, 0.25}}};
  int n_max = 31;
  std::vector<double> rho;  // rho[n + n_max]

  static ExactRecipe smooth(int n_max = 31);  // rho_n = 2^{-|n|}
  static ExactRecipe rough(int n_max = 31);   // rho_n = (1 + |n|)^{-2}: a C^0 profile in beta
};

struct CechRecipe {
  BumpProfile chi;
  LaurentSeries2 s;  // s(xi, eta) = sum s_{n,m} xi^m eta^n

  static CechRecipe eta_power(int n = 1);
};

struct Recipe {
  enum class Kind { zero, exact, cech };
  Kind kind = Kind::exact;
  ExactRecipe exact = ExactRecipe::smooth();
  CechRecipe cech = CechRecipe::eta_power();
  std::string name = "smooth";

  static Recipe from_name(const std::string& name);  // zero | smooth | rough | cech
};

struct AngularTerm {
  int j = 0;
  int n = 0;
  cplx a;
  cplx b;
};

// Closed-form description of a test form.
class FormSource {
 public:
  virtual ~FormSource() = default;
  // (a, b) at a point
  virtual std::pair<cplx, cplx> components(const CoverPoint& p) const = 0;
  // Fourier coefficients in (alpha, beta) of a and b at fixed (u, v), sorted by (j, n).
  virtual std::vector<AngularTerm> angular(double u, double v) const = 0;
  // Potential g0 with dbar g0 = f, if known (zero otherwise).
  virtual cplx potential(const CoverPoint& p) const { (void)p; return 0.0; }
  virtual std::vector<AngularTerm> potential_angular(double u, double v) const { (void)u, (void)v; return {}; }
  virtual double support() const = 0;  // f vanishes for |v| >= support
  virtual bool equivariant() const = 0;
  // |f|_omega is sigma-invariant
  virtual bool norm_invariant() const = 0;
  virtual int max_xi_mode() const = 0;
  virtual int max_eta_mode() const = 0;
};

std::shared_ptr<const FormSource> make_source(const Recipe& r, const DerivedConstants& c);

struct Form01 {
  std::shared_ptr<const TwistedSpectral> spectral;
  std::shared_ptr<const FormSource> source;
  Field a;          // grid samples, layout of LogPolarGrid
  Field b;
  Field potential;  // samples of g0 (exact recipe), empty otherwise
  double support = 0.0;
  bool equivariant = true;
  std::string recipe;
  double support_leak = 0.0;  // sup of |a|, |b| over |v| >= support
};

// Samples the recipe on the grid by exact band-limited synthesis in the angles.
// DomainError if the cutoff band does not fit inside the v band; AliasingError if modes do not fit.
Form01 build_test_form(const DerivedConstants& c, const LogPolarGrid& grid, const Recipe& r);

// sup over `count` pseudo-random points of |a(sigma p) - nu a(p)| and the same for b.
double form_equivariance_residual(const FormSource& f, const DerivedConstants& c, int count, unsigned seed);

// sup |(d_u + i d_alpha) b - (d_v + i d_beta) a| / sup |f| at pseudo-random points, with
// spectral angular derivatives and a fourth-order difference in u and v.
double closedness_check(const FormSource& f, int count, unsigned seed);

}  // namespace tlab
