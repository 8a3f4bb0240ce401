#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "rct/series.hpp"
#include "rct/simulate.hpp"

using namespace rct;

namespace {

double sample_corr(const std::vector<double>& a, const std::vector<double>& b) {
    const std::size_t n = a.size();
    double ma = 0.0, mb = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        ma += a[i];
        mb += b[i];
    }
    ma /= static_cast<double>(n);
    mb /= static_cast<double>(n);
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sab += (a[i] - ma) * (b[i] - mb);
        saa += (a[i] - ma) * (a[i] - ma);
        sbb += (b[i] - mb) * (b[i] - mb);
    }
    return sab / std::sqrt(saa * sbb);
}

double lag1_autocorr(const std::vector<double>& v) {
    std::vector<double> head(v.begin(), v.end() - 1);
    std::vector<double> tail(v.begin() + 1, v.end());
    return sample_corr(head, tail);
}

double sample_var(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m += x;
    m /= static_cast<double>(v.size());
    double acc = 0.0;
    for (double x : v) acc += (x - m) * (x - m);
    return acc / static_cast<double>(v.size());
}

}  // namespace

TEST_SUITE_BEGIN("simulate");

TEST_CASE("gaussian_pair") {
    SUBCASE("rho = 1 duplicates the stream elementwise") {
        const BivariatePair p = gaussian_pair(1000, 1.0, 99);
        CHECK(p.x().values() == p.y().values());
    }
    SUBCASE("rho = -1 mirrors the stream") {
        const BivariatePair p = gaussian_pair(1000, -1.0, 99);
        for (int t = 0; t < p.length(); ++t) CHECK(p.y()[t] == -p.x()[t]);
    }
    SUBCASE("rho = 0 leaves streams uncorrelated") {
        const BivariatePair p = gaussian_pair(100000, 0.0, 17);
        CHECK(std::abs(sample_corr(p.x().values(), p.y().values())) < 0.01);
    }
    SUBCASE("rho = 0.9 hits the target correlation and unit variances") {
        const BivariatePair p = gaussian_pair(100000, 0.9, 23);
        CHECK(sample_corr(p.x().values(), p.y().values()) == doctest::Approx(0.9).epsilon(0.012));
        CHECK(sample_var(p.x().values()) == doctest::Approx(1.0).epsilon(0.02));
        CHECK(sample_var(p.y().values()) == doctest::Approx(1.0).epsilon(0.02));
    }
    SUBCASE("deterministic per seed, independent across seeds") {
        const BivariatePair a = gaussian_pair(10000, 0.5, 7);
        const BivariatePair b = gaussian_pair(10000, 0.5, 7);
        const BivariatePair c = gaussian_pair(10000, 0.5, 8);
        CHECK(a.x().values() == b.x().values());
        CHECK(a.y().values() == b.y().values());
        CHECK(std::abs(sample_corr(a.x().values(), c.x().values())) < 0.03);  // 3 / sqrt(T)
    }
    SUBCASE("invalid correlation errors") {
        CHECK_THROWS_AS(gaussian_pair(10, 1.5, 1), std::invalid_argument);
    }
}

TEST_CASE("simulate_ar1_pair") {
    SUBCASE("zero coefficients reduce to the innovation stream") {
        Ar1PairSpec spec;
        spec.theta1 = spec.theta2 = 0.0;
        spec.rho = 0.4;
        spec.length = 5000;
        spec.burnin = 0;
        for (CouplingMode mode : {CouplingMode::AsPrinted, CouplingMode::TrueAr1}) {
            spec.coupling = mode;
            const BivariatePair sim = simulate_ar1_pair(spec, 31);
            const BivariatePair noise = gaussian_pair(5000, 0.4, 31);
            CHECK(sim.x().values() == noise.x().values());
            CHECK(sim.y().values() == noise.y().values());
        }
    }
    SUBCASE("lag-one autocorrelation matches theta") {
        Ar1PairSpec spec;
        spec.theta1 = 0.5;
        spec.theta2 = 0.5;
        spec.rho = 0.0;
        spec.length = 100000;
        const BivariatePair p = simulate_ar1_pair(spec, 5);
        CHECK(lag1_autocorr(p.x().values()) == doctest::Approx(0.5).epsilon(0.02));
    }
    SUBCASE("twin recursions inherit the innovation correlation") {
        Ar1PairSpec spec;
        spec.theta1 = spec.theta2 = 0.5;
        spec.rho = 0.9;
        spec.length = 100000;
        spec.coupling = CouplingMode::TrueAr1;
        const BivariatePair p = simulate_ar1_pair(spec, 6);
        CHECK(sample_corr(p.x().values(), p.y().values()) == doctest::Approx(0.9).epsilon(0.025));
    }
    SUBCASE("nonstationary coefficient errors") {
        Ar1PairSpec spec;
        spec.theta1 = 1.0;
        spec.length = 100;
        CHECK_THROWS_AS(simulate_ar1_pair(spec, 1), std::invalid_argument);
    }
}

TEST_CASE("arfima_ma_coefficients") {
    SUBCASE("closed forms of the first terms") {
        for (double d : {0.05, 0.2, 0.4, 0.49}) {
            const std::vector<double> a = arfima_ma_coefficients(d, 2);
            CHECK(a[0] == 1.0);
            CHECK(a[1] == doctest::Approx(d).epsilon(1e-14));
            CHECK(a[2] == doctest::Approx(d * (d + 1.0) / 2.0).epsilon(1e-14));
        }
        CHECK(arfima_ma_coefficients(0.4, 2)[2] == doctest::Approx(0.28).epsilon(1e-14));
    }
    SUBCASE("recursion agrees with the gamma-ratio form") {
        for (double d : {0.1, 0.25, 0.4}) {
            const std::vector<double> a = arfima_ma_coefficients(d, 50);
            for (int n = 0; n <= 50; ++n) {
                const double want = std::exp(std::lgamma(n + d) - std::lgamma(n + 1.0) - std::lgamma(d));
                CHECK(a[static_cast<std::size_t>(n)] == doctest::Approx(want).epsilon(1e-10));
            }
        }
    }
    SUBCASE("positive, decreasing, with the expected tail decay") {
        const double d = 0.3;
        const std::vector<double> a = arfima_ma_coefficients(d, 10000);
        for (std::size_t n = 1; n < a.size(); ++n) {
            CHECK(a[n] > 0.0);
            if (n >= 2) CHECK(a[n] < a[n - 1]);
        }
        // a_n * n^(1-d) settles: relative change under 1e-3 over the last decade.
        const double c1 = a[1000] * std::pow(1000.0, 1.0 - d);
        const double c2 = a[10000] * std::pow(10000.0, 1.0 - d);
        CHECK(std::abs(c2 / c1 - 1.0) < 1e-3);
    }
    SUBCASE("domain errors") {
        CHECK_THROWS_AS(arfima_ma_coefficients(-0.1, 5), std::invalid_argument);
        CHECK_THROWS_AS(arfima_ma_coefficients(0.5, 5), std::invalid_argument);
    }
    SUBCASE("d = 0 degenerates to white noise weights") {
        const std::vector<double> a = arfima_ma_coefficients(0.0, 5);
        CHECK(a[0] == 1.0);
        for (std::size_t n = 1; n < a.size(); ++n) CHECK(a[n] == 0.0);
    }
}

TEST_CASE("simulate_arfima_pair") {
    SUBCASE("matches the direct moving-average oracle on small instances") {
        ArfimaPairSpec spec;
        spec.d1 = 0.35;
        spec.d2 = 0.15;
        spec.rho = 0.6;
        spec.length = 64;
        spec.truncation = 48;
        const BivariatePair sim = simulate_arfima_pair(spec, 1234);
        const BivariatePair innov = gaussian_pair(spec.length + spec.truncation, spec.rho, 1234);
        const std::vector<double> a1 = arfima_ma_coefficients(spec.d1, spec.truncation);
        const std::vector<double> a2 = arfima_ma_coefficients(spec.d2, spec.truncation);
        for (int t = 0; t < spec.length; ++t) {
            double ex = 0.0, ey = 0.0;
            for (int n = 0; n <= spec.truncation; ++n) {
                ex += a1[static_cast<std::size_t>(n)] * innov.x()[static_cast<std::size_t>(spec.truncation + t - n)];
                ey += a2[static_cast<std::size_t>(n)] * innov.y()[static_cast<std::size_t>(spec.truncation + t - n)];
            }
            CHECK(sim.x()[static_cast<std::size_t>(t)] == doctest::Approx(ex).epsilon(1e-10));
            CHECK(sim.y()[static_cast<std::size_t>(t)] == doctest::Approx(ey).epsilon(1e-10));
        }
    }
    SUBCASE("large instances use the same contract as the oracle") {
        // Exercises the FFT convolution branch against the direct sum.
        ArfimaPairSpec spec;
        spec.d1 = spec.d2 = 0.4;
        spec.rho = 0.9;
        spec.length = 700;
        spec.truncation = 600;
        const BivariatePair sim = simulate_arfima_pair(spec, 77);
        const BivariatePair innov = gaussian_pair(spec.length + spec.truncation, spec.rho, 77);
        const std::vector<double> a = arfima_ma_coefficients(spec.d1, spec.truncation);
        for (int t = 0; t < spec.length; t += 97) {
            double ex = 0.0;
            for (int n = 0; n <= spec.truncation; ++n)
                ex += a[static_cast<std::size_t>(n)] * innov.x()[static_cast<std::size_t>(spec.truncation + t - n)];
            CHECK(sim.x()[static_cast<std::size_t>(t)] == doctest::Approx(ex).epsilon(1e-10));
        }
    }
    SUBCASE("vanishing memory behaves like noise") {
        ArfimaPairSpec spec;
        spec.d1 = spec.d2 = 0.01;
        spec.rho = 0.0;
        spec.length = 100000;
        const BivariatePair p = simulate_arfima_pair(spec, 55);
        double r1 = 0.0;
        {
            std::vector<double> head(p.x().values().begin(), p.x().values().end() - 1);
            std::vector<double> tail(p.x().values().begin() + 1, p.x().values().end());
            r1 = sample_corr(head, tail);
        }
        CHECK(std::abs(r1) < 0.05);
    }
    SUBCASE("perfect innovation correlation with equal memory gives equal series") {
        ArfimaPairSpec spec;
        spec.d1 = spec.d2 = 0.3;
        spec.rho = 1.0;
        spec.length = 4000;
        const BivariatePair p = simulate_arfima_pair(spec, 2);
        CHECK(p.x().values() == p.y().values());
    }
    SUBCASE("independent innovations leave the ccf flat") {
        ArfimaPairSpec spec;
        spec.d1 = spec.d2 = 0.1;
        spec.rho = 0.0;
        spec.length = 20000;
        const BivariatePair p = simulate_arfima_pair(spec, 91);
        const CcfEstimate est = ccf(p, 10);
        const double bound = 3.0 / std::sqrt(static_cast<double>(spec.length));
        for (double r : est.rho) CHECK(std::abs(r) < bound);
    }
    SUBCASE("negative truncation errors") {
        ArfimaPairSpec spec;
        spec.d1 = spec.d2 = 0.2;
        spec.length = 100;
        spec.truncation = -3;
        CHECK_THROWS_AS(simulate_arfima_pair(spec, 1), std::invalid_argument);
    }
}

TEST_SUITE_END();
