#pragma once

#include <vector>

#include "rct/estimators.hpp"
#include "rct/random.hpp"
#include "rct/series.hpp"

namespace rct {

/// What the bootstrap uses for the exponents in the statistic's prefactor.
///  - ReestimatePerResample: DFA on the original pair for the observed
///    statistic and DFA on every resampled pair for the bootstrap statistics.
///  - FixedFromOriginal: DFA once on the original pair, reused everywhere.
///  - UserSupplied: caller-provided values used everywhere (the route for
///    assumed or known exponents).
enum class HurstMode { ReestimatePerResample, FixedFromOriginal, UserSupplied };

struct MbbConfig {
    int block_size = 0;   // 0 -> max(floor(T^(1/3)), q + 1), capped at T
    int replicates = 1000;
    double alpha = 0.05;
    HurstMode hurst_mode = HurstMode::ReestimatePerResample;
    double hx = 0.5;  // used when hurst_mode == UserSupplied
    double hy = 0.5;
    DfaConfig dfa{};
    Seed seed = 0;
};

/// Test outcome: observed statistic, the bootstrap distribution, nearest-rank
/// confidence bounds at the configured alpha, two-sided empirical p-value and
/// the decision (reject iff the observed statistic falls outside the bounds).
struct RctResult {
    RctStatistic observed;
    std::vector<double> boot_stats;  // successful resamples, replicate order
    double ci_low = 0.0;
    double ci_high = 0.0;
    double p_value = 1.0;
    bool reject = false;
    int block_size = 0;
    int failed_resamples = 0;
    HurstMode hurst_mode = HurstMode::ReestimatePerResample;
};

/// One row of a q-sweep; stat carries the full statistic decomposition.
struct QSweepRow {
    RctStatistic stat;
    double ci_low = 0.0;
    double ci_high = 0.0;
    double p_value = 1.0;
    bool reject = false;
};

/// Default block length floor(T^(1/3)), raised to q+1 so the Bartlett window
/// never spans more block joins than the data admits.
int default_block_size(int length, int q);

/// Moving-block resample: overlapping blocks of length zeta drawn uniformly
/// with replacement at joint positions (the same starts applied to x and y),
/// concatenated and truncated to the original length. zeta == T returns the
/// pair unchanged; zeta == 1 is i.i.d. resampling of (x_t, y_t) pairs.
BivariatePair mbb_resample(const BivariatePair& p, int zeta, Seed seed);

/// Two-sided moving-block bootstrap test of short-range against power-law
/// cross-correlation. Resamples that hit a degenerate long-run covariance are
/// dropped; more than 5% of them aborts with BootstrapInstability.
RctResult rct_test(const BivariatePair& p, int q, const MbbConfig& cfg);

/// rct_test across a q range with bootstrap resamples shared across q per
/// replicate, so the curve is coherent in q. The shared block size defaults to
/// floor(T^(1/3)) (set cfg.block_size to override).
std::vector<QSweepRow> q_sweep(const BivariatePair& p, int q_min, int q_max, const MbbConfig& cfg);

/// Nearest-rank empirical quantile bounds at alpha/2 and 1-alpha/2.
std::pair<double, double> empirical_ci(std::vector<double> stats, double alpha);

/// Two-sided bootstrap p-value 2*min(r+, r-) with the add-one convention,
/// capped at 1.
double bootstrap_p_value(const std::vector<double>& stats, double observed);

/// Re-derive the decision at another significance level from a stored result.
bool reject_at(const RctResult& result, double alpha, double* ci_low = nullptr,
               double* ci_high = nullptr);

}  // namespace rct
