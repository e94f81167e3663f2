#include "fft.hpp"

#include <cmath>
#include <numbers>

namespace toad::detail {

namespace {

bool is_power_of_two(std::size_t n) {
    return n != 0 && (n & (n - 1)) == 0;
}

std::size_t next_power_of_two(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

// In-place iterative Cooley-Tukey, size must be a power of two.
void fft_pow2(std::vector<std::complex<double>>& a, bool inverse) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = (inverse ? 2.0 : -2.0) * std::numbers::pi / static_cast<double>(len);
        const std::complex<double> wlen(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const std::complex<double> u = a[i + k];
                const std::complex<double> v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
    if (inverse) {
        for (auto& x : a) x /= static_cast<double>(n);
    }
}

// Bluestein chirp-z transform: exact DFT for arbitrary n via a power-of-two
// convolution of length >= 2n-1.
std::vector<std::complex<double>> dft_bluestein(const std::vector<std::complex<double>>& input) {
    const std::size_t n = input.size();
    const std::size_t m = next_power_of_two(2 * n - 1);

    std::vector<std::complex<double>> chirp(n);
    for (std::size_t k = 0; k < n; ++k) {
        // k^2 stays exactly representable for any series length we handle
        const double phase = std::numbers::pi * static_cast<double>(k) * static_cast<double>(k) /
                             static_cast<double>(n);
        chirp[k] = std::complex<double>(std::cos(phase), -std::sin(phase));
    }

    std::vector<std::complex<double>> a(m), b(m);
    for (std::size_t k = 0; k < n; ++k) a[k] = input[k] * chirp[k];
    for (std::size_t k = 0; k < n; ++k) {
        b[k] = std::conj(chirp[k]);
        if (k != 0) b[m - k] = b[k];
    }

    fft_pow2(a, false);
    fft_pow2(b, false);
    for (std::size_t k = 0; k < m; ++k) a[k] *= b[k];
    fft_pow2(a, true);

    std::vector<std::complex<double>> out(n);
    for (std::size_t k = 0; k < n; ++k) out[k] = a[k] * chirp[k];
    return out;
}

} // namespace

std::vector<std::complex<double>> dft(const std::vector<std::complex<double>>& input) {
    if (input.empty()) return {};
    if (is_power_of_two(input.size())) {
        auto a = input;
        fft_pow2(a, false);
        return a;
    }
    return dft_bluestein(input);
}

} // namespace toad::detail
