#pragma once

// Mode-wise solve of dbar g = f for equivariant forms: each (n, j, l) mode of the
// alpha-u equation is a division by (i k - j)/2; the v-equation is then a consequence
// of closedness and is reported as a residual.

#include "toroidal_lab/fixtures.hpp"
#include "toroidal_lab/small_divisor.hpp"

#include <memory>
#include <vector>

namespace tlab {

// An equivariant function in mode form plus an optional holomorphic Laurent part
// (which is not equivariant in general; it carries the A-correction and injected defects).
class CoverSection {
 public:
  CoverSection() = default;
  CoverSection(std::shared_ptr<const TwistedSpectral> spectral, Field modes, LaurentSeries2 holomorphic = {});

  const TwistedSpectral& spectral() const { return *spectral_; }
  std::shared_ptr<const TwistedSpectral> spectral_ptr() const { return spectral_; }
  const Field& modes() const { return modes_; }
  const LaurentSeries2& holomorphic() const { return hol_; }

  CoverSection with_holomorphic(LaurentSeries2 h) const;
  Field grid_values() const;
  // Values at sigma^shift(u, 2 pi a/ka, v_iv, 2 pi b/kb), row-major over (a, b).
  std::vector<cplx> slice(double u, int iv, int ka, int kb, int shift) const;
  // Log-frame components of dbar at the same points; the holomorphic part contributes nothing.
  std::pair<std::vector<cplx>, std::vector<cplx>> dbar_slice(double u, int iv, int ka, int kb, int shift) const;

 private:
  std::shared_ptr<const TwistedSpectral> spectral_;
  Field modes_;
  Field a_modes_, b_modes_;
  LaurentSeries2 hol_;
};

struct DbarSolveOptions {
  int trunc = 32;  // keep eta modes |n| < trunc
  double resonance_tol = 1e-10;
  double drop_tol = 1e-12;
  double closedness_tol = 1e-6;
};

struct ModeResidual {
  int n = 0;
  double residual = 0.0;  // l2 of the mode's residual in both components, relative to ||f||
};

struct DbarSolution {
  CoverSection g;
  double min_divisor = 0.0;
  std::vector<int> min_divisor_mode;  // (n, j, l)
  std::vector<SkippedMode> skipped;
  std::vector<ModeResidual> mode_residuals;
  double closedness = 0.0;     // relative
  double dbar_residual = 0.0;  // ||dbar g - f|| / ||f|| on the grid
};

// DomainError for non-equivariant or non-closed data; ResonantObstruction for a
// trivial-character mode carrying data; AliasingError for data on a Nyquist mode.
DbarSolution solve_dbar_modes(const Form01& f, const DbarSolveOptions& opt = {});

// ||dbar g - f|| / ||f|| (absolute when f = 0).
double dbar_residual(const CoverSection& g, const Form01& f);

struct TruncationRow {
  int trunc = 0;
  double residual = 0.0;
};

std::vector<TruncationRow> truncation_convergence_study(const Form01& f, const std::vector<int>& truncs,
                                                         DbarSolveOptions opt = {});

// sup |g| over grid points with K + margin < |v|.
double support_decay_report(const CoverSection& g, double K, double margin);

}  // namespace tlab
