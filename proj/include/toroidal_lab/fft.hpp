#pragma once

// Thin FFTW wrapper: unnormalized in-place DFTs along one axis of a row-major array.
// sign = -1 is the forward kernel exp(-2 pi i jk/K), sign = +1 the backward one.

#include <complex>
#include <vector>

namespace tlab {

void fft_axis(std::vector<std::complex<double>>& data, const std::vector<int>& dims, int axis, int sign);
void fft_1d(std::vector<std::complex<double>>& data, int sign);

}  // namespace tlab
