#include "dualspin/fft.hpp"

#include <numbers>

#include "dualspin/errors.hpp"

namespace dualspin::fft {

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

void transform(std::vector<std::complex<double>>& a) {
    const std::size_t n = a.size();
    if (n == 0 || (n & (n - 1)) != 0)
        throw InvalidInput("fft::transform requires a power-of-two length");
    if (n == 1) return;

    // Bit-reversal permutation.
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }

    // Twiddle table w[k] = exp(-2*pi*i*k/n), k < n/2. Each entry comes
    // straight from sincos so the error does not grow with n.
    std::vector<std::complex<double>> w(n / 2);
    const double step = -2.0 * std::numbers::pi / static_cast<double>(n);
    for (std::size_t k = 0; k < n / 2; ++k)
        w[k] = std::polar(1.0, step * static_cast<double>(k));

    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t twiddle_stride = n / len;
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t k = 0; k < len / 2; ++k) {
                const std::complex<double> u = a[i + k];
                const std::complex<double> v = a[i + k + len / 2] * w[k * twiddle_stride];
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
            }
        }
    }
}

}  // namespace dualspin::fft
