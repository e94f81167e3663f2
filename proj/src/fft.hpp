#pragma once

#include <complex>
#include <vector>

namespace toad::detail {

/// Forward discrete Fourier transform of arbitrary length. Uses an iterative
/// radix-2 kernel for power-of-two sizes and the Bluestein chirp-z transform
/// otherwise, so bin semantics match the textbook DFT exactly for every n.
std::vector<std::complex<double>> dft(const std::vector<std::complex<double>>& input);

} // namespace toad::detail
