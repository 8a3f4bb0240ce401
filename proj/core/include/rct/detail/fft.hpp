#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace rct::detail {

/// In-place iterative radix-2 FFT; data.size() must be a power of two.
void fft_radix2(std::vector<std::complex<double>>& data, bool inverse);

std::size_t next_pow2(std::size_t n);

/// Full linear convolution of kernel with signal (FFT-backed); output length
/// kernel.size() + signal.size() - 1.
std::vector<double> convolve_full(std::span<const double> kernel, std::span<const double> signal);

}  // namespace rct::detail
