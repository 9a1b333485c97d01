#include "toroidal_lab/fft.hpp"

#include "toroidal_lab/errors.hpp"

#include <fftw3.h>

#include <cstddef>

namespace tlab {

void fft_axis(std::vector<std::complex<double>>& data, const std::vector<int>& dims, int axis, int sign) {
  if (axis < 0 || axis >= static_cast<int>(dims.size())) throw DomainError("fft axis out of range");
  std::size_t total = 1;
  for (int d : dims) total *= static_cast<std::size_t>(d);
  if (total != data.size()) throw DomainError("fft dimensions do not match the data");
  if (total == 0) return;
  int inner = 1;
  for (std::size_t i = axis + 1; i < dims.size(); ++i) inner *= dims[i];
  int outer = 1;
  for (int i = 0; i < axis; ++i) outer *= dims[i];
  const int n = dims[axis];
  fftw_iodim transform{n, inner, inner};
  fftw_iodim loops[2] = {{outer, n * inner, n * inner}, {inner, 1, 1}};
  auto* p = reinterpret_cast<fftw_complex*>(data.data());
  fftw_plan plan = fftw_plan_guru_dft(1, &transform, 2, loops, p, p, sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD,
                                      FFTW_ESTIMATE);
  if (plan == nullptr) throw Error("FFTW could not create a plan");
  fftw_execute(plan);
  fftw_destroy_plan(plan);
}

void fft_1d(std::vector<std::complex<double>>& data, int sign) {
  fft_axis(data, {static_cast<int>(data.size())}, 0, sign);
}

}  // namespace tlab
