#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "rct/random.hpp"
#include "rct/series.hpp"
#include "rct/simulate.hpp"

using namespace rct;

namespace {

// Brute-force oracle with per-term mean subtraction; pairs x_t with y_{t+k}.
double cross_cov_oracle(const std::vector<double>& x, const std::vector<double>& y, int k) {
    const int n = static_cast<int>(x.size());
    double mx = 0.0, my = 0.0;
    for (double v : x) mx += v;
    for (double v : y) my += v;
    mx /= n;
    my /= n;
    double acc = 0.0;
    for (int t = 0; t < n; ++t) {
        const int u = t + k;
        if (u < 0 || u >= n) continue;
        acc += (x[t] - mx) * (y[u] - my);
    }
    return acc / n;
}

std::vector<double> gaussian_vector(int n, Seed seed) {
    Rng rng(seed);
    std::vector<double> v(static_cast<std::size_t>(n));
    for (double& x : v) x = rng.normal();
    return v;
}

}  // namespace

TEST_SUITE_BEGIN("series");

TEST_CASE("construction rejects non-finite values") {
    CHECK_THROWS_AS(Series({1.0, std::numeric_limits<double>::quiet_NaN()}), std::invalid_argument);
    CHECK_THROWS_AS(Series({1.0, std::numeric_limits<double>::infinity()}), std::invalid_argument);
    CHECK_THROWS_AS(BivariatePair(Series({1.0, 2.0}), Series({1.0, 2.0, 3.0})),
                    std::invalid_argument);
}

TEST_CASE("demean") {
    SUBCASE("symmetric case") {
        const Series out = demean(Series({1.0, 2.0, 3.0}));
        CHECK(out.values() == std::vector<double>{-1.0, 0.0, 1.0});
    }
    SUBCASE("identity case") {
        const Series out = demean(Series({0.0, 0.0, 0.0}));
        CHECK(out.values() == std::vector<double>{0.0, 0.0, 0.0});
    }
    SUBCASE("hand-checked mean") {
        // sum = 8.0 over 4 values -> mean 2.0
        const Series out = demean(Series({2.5, 0.5, -1.0, 6.0}));
        CHECK(out[0] == doctest::Approx(0.5).epsilon(1e-14));
        CHECK(out[1] == doctest::Approx(-1.5).epsilon(1e-14));
        CHECK(out[2] == doctest::Approx(-3.0).epsilon(1e-14));
        CHECK(out[3] == doctest::Approx(4.0).epsilon(1e-14));
    }
    SUBCASE("residual mean is numerically zero") {
        const Series out = demean(Series(gaussian_vector(1000, 5)));
        double m = 0.0, peak = 0.0;
        for (double v : out.values()) {
            m += v;
            peak = std::max(peak, std::abs(v));
        }
        CHECK(std::abs(m / out.length()) < 1e-12 * peak);
    }
    SUBCASE("empty input errors") {
        CHECK_THROWS_WITH_AS(demean(Series(std::vector<double>{})), "empty input",
                             std::invalid_argument);
    }
}

TEST_CASE("partial_sum") {
    CHECK(partial_sum(Series({1.0, 2.0, 3.0})).values() == std::vector<double>{1.0, 3.0, 6.0});
    CHECK(partial_sum(Series({0.0, 0.0, 0.0, 0.0})).values() ==
          std::vector<double>{0.0, 0.0, 0.0, 0.0});

    SUBCASE("matches an independent cumulative loop") {
        const std::vector<double> in = gaussian_vector(10, 1);
        const Series out = partial_sum(Series(in));
        double acc = 0.0;
        for (std::size_t t = 0; t < in.size(); ++t) {
            acc += in[t];
            CHECK(out[t] == doctest::Approx(acc).epsilon(1e-15));
        }
    }
    SUBCASE("inverts first differences") {
        const std::vector<double> original = gaussian_vector(200, 9);
        std::vector<double> diffs(original.size());
        diffs[0] = original[0];
        for (std::size_t t = 1; t < original.size(); ++t) diffs[t] = original[t] - original[t - 1];
        const Series back = partial_sum(Series(diffs));
        for (std::size_t t = 0; t < original.size(); ++t)
            CHECK(back[t] == doctest::Approx(original[t]).epsilon(1e-10));
    }
}

TEST_CASE("cross_covariance") {
    SUBCASE("lag zero with x == y is the divisor-T variance") {
        const std::vector<double> v = gaussian_vector(100, 3);
        const BivariatePair p{Series(v), Series(v)};
        CHECK(cross_covariance(p, 0) == doctest::Approx(variance(Series(v).span())).epsilon(1e-14));
    }
    SUBCASE("alternating series at lag one") {
        const std::vector<double> v{1.0, -1.0, 1.0, -1.0};
        const BivariatePair p{Series(v), Series(v)};
        CHECK(cross_covariance(p, 1) == doctest::Approx(-0.75).epsilon(1e-14));
        CHECK(cross_covariance(p, -1) == doctest::Approx(-0.75).epsilon(1e-14));
    }
    SUBCASE("independent streams stay near zero") {
        const BivariatePair p{Series(gaussian_vector(1000, 21)), Series(gaussian_vector(1000, 22))};
        CHECK(std::abs(cross_covariance(p, 0)) < 0.1);  // 3 / sqrt(T)
    }
    SUBCASE("matches the brute-force oracle on random instances") {
        for (int instance = 0; instance < 100; ++instance) {
            const int n = 8 + instance % 23;
            const std::vector<double> x = gaussian_vector(n, derive_seed(100, instance, 0));
            const std::vector<double> y = gaussian_vector(n, derive_seed(100, instance, 1));
            const BivariatePair p{Series(x), Series(y)};
            for (int k = -(n - 2); k <= n - 2; ++k) {
                const double got = cross_covariance(p, k);
                const double want = cross_cov_oracle(x, y, k);
                CHECK(got == doctest::Approx(want).epsilon(1e-10));
            }
        }
    }
    SUBCASE("auto-covariance equals the double-loop oracle tightly") {
        const std::vector<double> v = gaussian_vector(64, 77);
        const BivariatePair p{Series(v), Series(v)};
        for (int k = 0; k <= 10; ++k)
            CHECK(cross_covariance(p, k) ==
                  doctest::Approx(cross_cov_oracle(v, v, k)).epsilon(1e-12));
    }
    SUBCASE("excessive lag errors") {
        const BivariatePair p{Series(gaussian_vector(10, 1)), Series(gaussian_vector(10, 2))};
        CHECK_THROWS_WITH_AS(cross_covariance(p, 9), "lag exceeds sample", std::invalid_argument);
    }
}

TEST_CASE("ccf") {
    SUBCASE("identical series has unit correlation at lag zero") {
        const std::vector<double> v = gaussian_vector(500, 4);
        const CcfEstimate est = ccf(BivariatePair(Series(v), Series(v)), 5);
        CHECK(est.rho_at(0) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(est.gamma_at(0) / (stddev(Series(v).span()) * stddev(Series(v).span())) ==
              doctest::Approx(est.rho_at(0)).epsilon(1e-12));
    }
    SUBCASE("a one-step lead peaks at lag one") {
        // y reproduces x one step later, so x leads y.
        const std::vector<double> x = gaussian_vector(5000, 8);
        std::vector<double> y(x.size(), 0.0);
        for (std::size_t t = 1; t < x.size(); ++t) y[t] = x[t - 1];
        const CcfEstimate est = ccf(BivariatePair(Series(x), Series(y)), 5);
        int argmax = 0;
        double best = -1.0;
        for (int k = -5; k <= 5; ++k) {
            if (std::abs(est.rho_at(k)) > best) {
                best = std::abs(est.rho_at(k));
                argmax = k;
            }
        }
        CHECK(argmax == 1);
    }
    SUBCASE("swap symmetry is exact") {
        const std::vector<double> x = gaussian_vector(300, 31);
        const std::vector<double> y = gaussian_vector(300, 32);
        const CcfEstimate xy = ccf(BivariatePair(Series(x), Series(y)), 12);
        const CcfEstimate yx = ccf(BivariatePair(Series(y), Series(x)), 12);
        for (int k = -12; k <= 12; ++k) {
            CHECK(xy.rho_at(k) == yx.rho_at(-k));
            CHECK(xy.gamma_at(k) == yx.gamma_at(-k));
        }
    }
    SUBCASE("correlations stay inside [-1, 1]") {
        for (int instance = 0; instance < 50; ++instance) {
            const int n = 16 + instance;
            const BivariatePair p{Series(gaussian_vector(n, derive_seed(7, instance, 0))),
                                  Series(gaussian_vector(n, derive_seed(7, instance, 1)))};
            const CcfEstimate est = ccf(p, n / 2);
            for (double r : est.rho) {
                CHECK(r <= 1.0 + 1e-12);
                CHECK(r >= -1.0 - 1e-12);
            }
        }
    }
    SUBCASE("cross-persistent pair decays like a power law") {
        // Twin fractional-noise pair, d = 0.4: rho(k) ~ k^(2d - 1), so the
        // log-log slope over k in [10, 100] sits near -0.2.
        ArfimaPairSpec spec;
        spec.d1 = spec.d2 = 0.4;
        spec.rho = 0.9;
        spec.length = 100000;
        const BivariatePair p = simulate_arfima_pair(spec, 4242);
        const CcfEstimate est = ccf(p, 100);
        double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
        int count = 0;
        for (int k = 10; k <= 100; ++k) {
            const double lx = std::log(static_cast<double>(k));
            const double ly = std::log(est.rho_at(k));
            sx += lx;
            sy += ly;
            sxx += lx * lx;
            sxy += lx * ly;
            ++count;
        }
        const double slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
        CHECK(slope == doctest::Approx(-0.2).epsilon(0.75));  // +-0.15 absolute
        CHECK(std::abs(slope + 0.2) < 0.15);
    }
}

TEST_SUITE_END();
