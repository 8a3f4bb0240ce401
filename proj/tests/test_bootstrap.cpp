#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "rct/bootstrap.hpp"
#include "rct/errors.hpp"
#include "rct/simulate.hpp"

using namespace rct;

namespace {

double lag1_autocorr(const std::vector<double>& v) {
    const std::size_t n = v.size();
    double m = 0.0;
    for (double x : v) m += x;
    m /= static_cast<double>(n);
    double num = 0.0, den = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        den += (v[t] - m) * (v[t] - m);
        if (t + 1 < n) num += (v[t] - m) * (v[t + 1] - m);
    }
    return num / den;
}

double corr0(const BivariatePair& p) {
    return cross_covariance(p, 0) /
           (stddev(p.x().span()) * stddev(p.y().span()));
}

}  // namespace

TEST_SUITE_BEGIN("bootstrap");

TEST_CASE("default_block_size") {
    CHECK(default_block_size(1000, 1) == 10);
    CHECK(default_block_size(5000, 30) == 31);  // raised to q + 1
    CHECK(default_block_size(500, 5) == 7);
    CHECK(default_block_size(8, 30) == 8);  // capped at T
}

TEST_CASE("mbb_resample") {
    Ar1PairSpec spec;
    spec.theta1 = spec.theta2 = 0.8;
    spec.rho = 0.5;
    spec.length = 5000;
    const BivariatePair persistent = simulate_ar1_pair(spec, 10);

    SUBCASE("block size T returns the original pair") {
        const BivariatePair same = mbb_resample(persistent, 5000, 3);
        CHECK(same.x().values() == persistent.x().values());
        CHECK(same.y().values() == persistent.y().values());
    }
    SUBCASE("unit blocks destroy serial dependence") {
        const BivariatePair iid = mbb_resample(persistent, 1, 4);
        CHECK(std::abs(lag1_autocorr(iid.x().values())) < 3.0 / std::sqrt(5000.0));
    }
    SUBCASE("long blocks preserve short memory") {
        Ar1PairSpec mild;
        mild.theta1 = mild.theta2 = 0.5;
        mild.rho = 0.5;
        mild.length = 5000;
        const BivariatePair original = simulate_ar1_pair(mild, 11);
        double acc = 0.0;
        const int reps = 20;
        for (int r = 0; r < reps; ++r)
            acc += lag1_autocorr(mbb_resample(original, 50, derive_seed(12, r)).x().values());
        CHECK(acc / reps == doctest::Approx(0.5).epsilon(0.1));
        CHECK(std::abs(acc / reps - 0.5) < 0.05);
    }
    SUBCASE("joint indexing preserves the contemporaneous correlation") {
        const BivariatePair noisy = gaussian_pair(5000, 0.7, 21);
        const double base = corr0(noisy);
        for (int r = 0; r < 10; ++r) {
            const BivariatePair res = mbb_resample(noisy, 20, derive_seed(22, r));
            CHECK(std::abs(corr0(res) - base) < 0.05);
        }
    }
    SUBCASE("block size bounds") {
        CHECK_THROWS_AS(mbb_resample(persistent, 0, 1), std::invalid_argument);
        CHECK_THROWS_AS(mbb_resample(persistent, 5001, 1), std::invalid_argument);
    }
}

TEST_CASE("empirical helpers") {
    SUBCASE("nearest-rank bounds bracket the median") {
        std::vector<double> stats;
        Rng rng(5);
        for (int i = 0; i < 501; ++i) stats.push_back(rng.normal());
        const auto [lo, hi] = empirical_ci(stats, 0.1);
        std::vector<double> sorted(stats);
        std::sort(sorted.begin(), sorted.end());
        const double med = sorted[sorted.size() / 2];
        CHECK(lo <= med);
        CHECK(med <= hi);
        CHECK(lo < hi);
    }
    SUBCASE("p-values live in [2/(B+1), 1] and fall with distance") {
        std::vector<double> stats;
        Rng rng(6);
        for (int i = 0; i < 999; ++i) stats.push_back(rng.normal());
        double prev = bootstrap_p_value(stats, 0.0);
        CHECK(prev <= 1.0);
        for (double obs : {0.5, 1.0, 2.0, 4.0, 8.0}) {
            const double p = bootstrap_p_value(stats, obs);
            CHECK(p <= prev + 1e-15);
            prev = p;
        }
        CHECK(bootstrap_p_value(stats, 100.0) == doctest::Approx(2.0 / 1000.0));
        CHECK(bootstrap_p_value(stats, -100.0) == doctest::Approx(2.0 / 1000.0));
    }
}

TEST_CASE("rct_test") {
    MbbConfig cfg;
    cfg.replicates = 200;
    cfg.alpha = 0.1;
    cfg.hurst_mode = HurstMode::UserSupplied;
    cfg.hx = cfg.hy = 0.5;
    cfg.seed = 9001;

    const BivariatePair pair = gaussian_pair(400, 0.9, 31);

    SUBCASE("deterministic for identical inputs") {
        const RctResult a = rct_test(pair, 5, cfg);
        const RctResult b = rct_test(pair, 5, cfg);
        CHECK(a.observed.m == b.observed.m);
        CHECK(a.boot_stats == b.boot_stats);
        CHECK(a.ci_low == b.ci_low);
        CHECK(a.ci_high == b.ci_high);
        CHECK(a.p_value == b.p_value);
        CHECK(a.reject == b.reject);
    }
    SUBCASE("decision matches the interval and the p-value direction") {
        for (int s = 0; s < 30; ++s) {
            MbbConfig c = cfg;
            c.seed = derive_seed(77, s);
            const RctResult r = rct_test(gaussian_pair(400, 0.5, derive_seed(78, s)), 5, c);
            CHECK(r.reject == (r.observed.m < r.ci_low || r.observed.m > r.ci_high));
            CHECK(r.ci_low <= r.ci_high);
            CHECK(r.p_value >= 2.0 / (static_cast<double>(r.boot_stats.size()) + 1.0));
            CHECK(r.p_value <= 1.0);
            double lo = 0.0, hi = 0.0;
            CHECK(reject_at(r, c.alpha, &lo, &hi) == r.reject);
            CHECK(lo == r.ci_low);
            CHECK(hi == r.ci_high);
        }
    }
    SUBCASE("strong cross-persistence is detected") {
        ArfimaPairSpec spec;
        spec.d1 = spec.d2 = 0.4;
        spec.rho = 0.9;
        spec.length = 2000;
        MbbConfig c = cfg;
        c.replicates = 400;
        c.alpha = 0.05;
        c.hx = c.hy = 0.9;
        c.seed = 5150;
        const RctResult r = rct_test(simulate_arfima_pair(spec, 808), 10, c);
        CHECK(r.reject);
        CHECK(r.p_value < 0.05);
    }
    SUBCASE("hurst re-estimation mode runs and reports the mode") {
        MbbConfig c = cfg;
        c.hurst_mode = HurstMode::ReestimatePerResample;
        c.replicates = 120;
        const RctResult r = rct_test(pair, 3, c);
        CHECK(r.hurst_mode == HurstMode::ReestimatePerResample);
        CHECK(r.boot_stats.size() == 120);
    }
    SUBCASE("degenerate observed statistic propagates") {
        const BivariatePair degenerate{Series({1.0, 0.0, -1.0, 0.0}),
                                       Series({1.0, -2.0, 1.0, 0.0})};
        MbbConfig c = cfg;
        CHECK_THROWS_AS(rct_test(degenerate, 1, c), DegenerateStatistic);
    }
    SUBCASE("mostly-degenerate resamples abort as unstable") {
        // A single spike: most resamples miss it, come out constant after
        // demeaning, and fail the statistic; the failure fraction tops 5%.
        std::vector<double> spike(200, 0.0);
        spike[0] = 1.0;
        const BivariatePair p{Series(spike), Series(spike)};
        MbbConfig c = cfg;
        c.block_size = 10;
        CHECK_THROWS_WITH_AS(rct_test(p, 2, c), "bootstrap instability", BootstrapInstability);
    }
    SUBCASE("configuration validation") {
        MbbConfig c = cfg;
        c.replicates = 50;
        CHECK_THROWS_AS(rct_test(pair, 5, c), std::invalid_argument);
        c = cfg;
        c.alpha = 1.2;
        CHECK_THROWS_AS(rct_test(pair, 5, c), std::invalid_argument);
        CHECK_THROWS_AS(rct_test(pair, 399, cfg), std::invalid_argument);
    }
}

TEST_CASE("q_sweep") {
    MbbConfig cfg;
    cfg.replicates = 150;
    cfg.alpha = 0.1;
    cfg.hurst_mode = HurstMode::UserSupplied;
    cfg.hx = cfg.hy = 0.5;
    cfg.seed = 616;
    const BivariatePair pair = gaussian_pair(512, 0.8, 99);

    SUBCASE("a singleton range reproduces rct_test exactly") {
        const std::vector<QSweepRow> rows = q_sweep(pair, 4, 4, cfg);
        REQUIRE(rows.size() == 1);
        MbbConfig single = cfg;
        single.block_size = default_block_size(512, 0);  // the sweep's shared default
        const RctResult direct = rct_test(pair, 4, single);
        CHECK(rows[0].stat.m == direct.observed.m);
        CHECK(rows[0].ci_low == direct.ci_low);
        CHECK(rows[0].ci_high == direct.ci_high);
        CHECK(rows[0].p_value == direct.p_value);
        CHECK(rows[0].reject == direct.reject);
    }
    SUBCASE("rows reconstruct the statistic for every q") {
        const std::vector<QSweepRow> rows = q_sweep(pair, 1, 25, cfg);
        CHECK(rows.size() == 25);
        for (const QSweepRow& row : rows) {
            const RctStatistic& s = row.stat;
            const double rebuilt = std::pow(static_cast<double>(s.q), s.hx + s.hy - 1.0) *
                                   s.cov_partial_sums / (s.length * s.s_xy_q);
            CHECK(s.m == doctest::Approx(rebuilt).epsilon(1e-14));
        }
    }
    SUBCASE("observed rows agree with the standalone statistic at every q") {
        const std::vector<QSweepRow> rows = q_sweep(pair, 1, 25, cfg);
        for (const QSweepRow& row : rows) {
            const RctStatistic direct = rct_statistic(pair, row.stat.q, cfg.hx, cfg.hy);
            CHECK(row.stat.m == doctest::Approx(direct.m).epsilon(1e-12));
            CHECK(row.stat.s_xy_q == doctest::Approx(direct.s_xy_q).epsilon(1e-12));
            CHECK(row.stat.cov_partial_sums ==
                  doctest::Approx(direct.cov_partial_sums).epsilon(1e-12));
        }
    }
    SUBCASE("q range validation") {
        CHECK_THROWS_AS(q_sweep(pair, 0, 5, cfg), std::invalid_argument);
        CHECK_THROWS_AS(q_sweep(pair, 5, 2, cfg), std::invalid_argument);
        CHECK_THROWS_AS(q_sweep(pair, 1, 511, cfg), std::invalid_argument);
    }
}

TEST_SUITE_END();
