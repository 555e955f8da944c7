#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace riesz {

bool is_pow2(std::size_t n);

// In-place radix-2 transform, size must be a power of two.
// sign = -1: forward DFT  X[k] = sum_m x[m] e^{-2pi i km/N}
// sign = +1: synthesis     X[m] = sum_k x[k] e^{+2pi i km/N}  (no 1/N factor)
void fft_pow2(std::vector<std::complex<double>>& a, int sign);

}  // namespace riesz
