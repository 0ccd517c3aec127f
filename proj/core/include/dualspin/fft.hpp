#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace dualspin::fft {

/// Smallest power of two >= n (n >= 1).
std::size_t next_pow2(std::size_t n);

/// In-place forward DFT (unnormalized), radix-2 Cooley-Tukey.
/// a.size() must be a power of two.
void transform(std::vector<std::complex<double>>& a);

}  // namespace dualspin::fft
