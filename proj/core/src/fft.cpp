#include "rct/detail/fft.hpp"

#include <cmath>
#include <stdexcept>

namespace rct::detail {

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

void fft_radix2(std::vector<std::complex<double>>& data, bool inverse) {
    const std::size_t n = data.size();
    if (n == 0 || (n & (n - 1)) != 0) throw std::invalid_argument("fft size must be a power of two");

    // Bit-reversal permutation.
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(data[i], data[j]);
    }

    const double sign = inverse ? 1.0 : -1.0;
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = sign * 2.0 * 3.14159265358979323846 / static_cast<double>(len);
        const std::complex<double> wlen(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const std::complex<double> u = data[i + k];
                const std::complex<double> v = data[i + k + len / 2] * w;
                data[i + k] = u + v;
                data[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
    if (inverse) {
        const double inv = 1.0 / static_cast<double>(n);
        for (auto& c : data) c *= inv;
    }
}

std::vector<double> convolve_full(std::span<const double> kernel, std::span<const double> signal) {
    if (kernel.empty() || signal.empty()) throw std::invalid_argument("empty convolution operand");
    const std::size_t out_len = kernel.size() + signal.size() - 1;

    // Small products are cheaper done directly.
    if (kernel.size() * signal.size() <= 65536) {
        std::vector<double> out(out_len, 0.0);
        for (std::size_t i = 0; i < kernel.size(); ++i)
            for (std::size_t j = 0; j < signal.size(); ++j) out[i + j] += kernel[i] * signal[j];
        return out;
    }

    const std::size_t n = next_pow2(out_len);
    std::vector<std::complex<double>> a(n), b(n);
    for (std::size_t i = 0; i < kernel.size(); ++i) a[i] = kernel[i];
    for (std::size_t i = 0; i < signal.size(); ++i) b[i] = signal[i];
    fft_radix2(a, false);
    fft_radix2(b, false);
    for (std::size_t i = 0; i < n; ++i) a[i] *= b[i];
    fft_radix2(a, true);

    std::vector<double> out(out_len);
    for (std::size_t i = 0; i < out_len; ++i) out[i] = a[i].real();
    return out;
}

}  // namespace rct::detail
