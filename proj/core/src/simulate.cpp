#include "rct/simulate.hpp"

#include <cmath>
#include <stdexcept>

#include "rct/detail/fft.hpp"

namespace rct {

void Ar1PairSpec::validate() const {
    if (length < 1) throw std::invalid_argument("length must be positive");
    if (burnin < 0) throw std::invalid_argument("burnin must be nonnegative");
    if (std::abs(theta1) >= 1.0 || std::abs(theta2) >= 1.0)
        throw std::invalid_argument("AR coefficient outside stationary region");
    if (std::abs(rho) > 1.0) throw std::invalid_argument("innovation correlation outside [-1,1]");
}

int ArfimaPairSpec::effective_truncation() const {
    if (truncation > 0) return truncation;
    return length > 10000 ? length : 10000;
}

void ArfimaPairSpec::validate() const {
    if (length < 1) throw std::invalid_argument("length must be positive");
    if (d1 < 0.0 || d1 >= 0.5 || d2 < 0.0 || d2 >= 0.5)
        throw std::invalid_argument("fractional differencing parameter outside [0, 0.5)");
    if (std::abs(rho) > 1.0) throw std::invalid_argument("innovation correlation outside [-1,1]");
    if (truncation < 0) throw std::invalid_argument("truncation must be >= 1");
}

BivariatePair gaussian_pair(int length, double rho, Seed seed) {
    if (length < 1) throw std::invalid_argument("length must be positive");
    if (std::abs(rho) > 1.0) throw std::invalid_argument("innovation correlation outside [-1,1]");

    Rng rng(seed);
    const double mix = std::sqrt(1.0 - rho * rho);
    std::vector<double> eps(static_cast<std::size_t>(length));
    std::vector<double> nu(static_cast<std::size_t>(length));
    for (std::size_t t = 0; t < eps.size(); ++t) {
        const double e = rng.normal();
        const double h = rng.normal();
        eps[t] = e;
        nu[t] = rho * e + mix * h;
    }
    return BivariatePair(Series(std::move(eps)), Series(std::move(nu)));
}

BivariatePair simulate_ar1_pair(const Ar1PairSpec& spec, Seed seed) {
    spec.validate();
    const int total = spec.length + spec.burnin;
    BivariatePair innov = gaussian_pair(total, spec.rho, seed);
    const std::vector<double>& eps = innov.x().values();
    const std::vector<double>& nu = innov.y().values();

    std::vector<double> x(static_cast<std::size_t>(total));
    std::vector<double> y(static_cast<std::size_t>(total));
    double x_prev = 0.0;
    double y_prev = 0.0;
    for (int t = 0; t < total; ++t) {
        const double xt = spec.theta1 * x_prev + eps[static_cast<std::size_t>(t)];
        const double driver = spec.coupling == CouplingMode::AsPrinted ? x_prev : y_prev;
        const double yt = spec.theta2 * driver + nu[static_cast<std::size_t>(t)];
        x[static_cast<std::size_t>(t)] = xt;
        y[static_cast<std::size_t>(t)] = yt;
        x_prev = xt;
        y_prev = yt;
    }
    x.erase(x.begin(), x.begin() + spec.burnin);
    y.erase(y.begin(), y.begin() + spec.burnin);
    return BivariatePair(Series(std::move(x)), Series(std::move(y)));
}

std::vector<double> arfima_ma_coefficients(double d, int n_max) {
    if (d < 0.0 || d >= 0.5)
        throw std::invalid_argument("fractional differencing parameter outside [0, 0.5)");
    if (n_max < 0) throw std::invalid_argument("n_max must be nonnegative");

    std::vector<double> a(static_cast<std::size_t>(n_max) + 1);
    a[0] = 1.0;
    for (int n = 1; n <= n_max; ++n)
        a[static_cast<std::size_t>(n)] =
            a[static_cast<std::size_t>(n - 1)] * (static_cast<double>(n) - 1.0 + d) / static_cast<double>(n);
    return a;
}

namespace {

// Monte Carlo loops re-simulate the same process thousands of times; the
// kernel spectrum depends only on (d, truncation, fft size), so cache it per
// thread.
struct KernelFftCache {
    double d = -1.0;
    int trunc = -1;
    std::size_t n = 0;
    std::vector<std::complex<double>> spectrum;
};

const std::vector<std::complex<double>>& kernel_spectrum(double d, int trunc, std::size_t n) {
    thread_local KernelFftCache cache;
    if (cache.d != d || cache.trunc != trunc || cache.n != n) {
        const std::vector<double> coeff = arfima_ma_coefficients(d, trunc);
        cache.spectrum.assign(n, {0.0, 0.0});
        for (std::size_t i = 0; i < coeff.size(); ++i) cache.spectrum[i] = coeff[i];
        detail::fft_radix2(cache.spectrum, false);
        cache.d = d;
        cache.trunc = trunc;
        cache.n = n;
    }
    return cache.spectrum;
}

// Slice [trunc, trunc + length) of the kernel*stream convolution.
std::vector<double> fractional_filter(double d, int trunc, int length,
                                      const std::vector<double>& steps) {
    const std::size_t out_len = static_cast<std::size_t>(trunc) + steps.size();
    if (static_cast<std::size_t>(trunc + 1) * steps.size() <= 65536) {
        const std::vector<double> coeff = arfima_ma_coefficients(d, trunc);
        std::vector<double> conv = detail::convolve_full(coeff, steps);
        return std::vector<double>(conv.begin() + trunc, conv.begin() + trunc + length);
    }
    const std::size_t n = detail::next_pow2(out_len);
    const std::vector<std::complex<double>>& kfft = kernel_spectrum(d, trunc, n);
    std::vector<std::complex<double>> sig(n, {0.0, 0.0});
    for (std::size_t i = 0; i < steps.size(); ++i) sig[i] = steps[i];
    detail::fft_radix2(sig, false);
    for (std::size_t i = 0; i < n; ++i) sig[i] *= kfft[i];
    detail::fft_radix2(sig, true);
    std::vector<double> out(static_cast<std::size_t>(length));
    for (int t = 0; t < length; ++t) out[static_cast<std::size_t>(t)] = sig[static_cast<std::size_t>(trunc + t)].real();
    return out;
}

}  // namespace

BivariatePair simulate_arfima_pair(const ArfimaPairSpec& spec, Seed seed) {
    spec.validate();
    const int trunc = spec.effective_truncation();
    const int total = spec.length + trunc;
    BivariatePair innov = gaussian_pair(total, spec.rho, seed);

    std::vector<double> x = fractional_filter(spec.d1, trunc, spec.length, innov.x().values());
    std::vector<double> y = fractional_filter(spec.d2, trunc, spec.length, innov.y().values());
    return BivariatePair(Series(std::move(x)), Series(std::move(y)));
}

}  // namespace rct
