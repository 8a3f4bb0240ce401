#pragma once

// Allocation-free kernels shared by the statistic, the bootstrap loop and the
// Monte Carlo harness. Semantics are identical to the public Series-based
// operations; these exist so a million resample evaluations reuse one set of
// buffers.

#include <span>
#include <vector>

#include "rct/estimators.hpp"
#include "rct/random.hpp"

namespace rct::detail {

void demean_into(std::span<const double> in, std::vector<double>& out);

void partial_sum_into(std::span<const double> in, std::vector<double>& out);

/// Centered covariance with divisor n.
double centered_covariance(std::span<const double> a, std::span<const double> b);

/// gamma_xy(k) for k = -q..q (divisor n) into out[k + q]; inputs are already
/// demeaned.
void lagged_cross_covariances(std::span<const double> xd, std::span<const double> yd, int q,
                              std::vector<double>& out);

/// Bartlett-weighted sum of gammas[-q..q] stored as above.
double bartlett_weighted_sum(std::span<const double> gammas, int q);

/// DFA-1 exponent of a raw series; scratch avoids reallocation across calls.
double dfa_hurst(std::span<const double> series, const DfaConfig& config,
                 std::vector<double>& profile_scratch, std::vector<int>* scales_out = nullptr);

struct StatEval {
    double m = 0.0;
    double cov_partial_sums = 0.0;
    double s_xy_q = 0.0;
    bool degenerate = false;
};

struct StatWorkspace {
    std::vector<double> xd, yd;      // demeaned series
    std::vector<double> xs, ys;      // partial-sum paths
    std::vector<double> gammas;      // lagged cross-covariances
    std::vector<double> profile;     // DFA scratch
    std::vector<double> boot_x, boot_y;  // resample buffers
};

/// Full statistic evaluation; sets `degenerate` instead of throwing so that
/// bootstrap loops can count failures.
StatEval eval_rct_statistic(std::span<const double> x, std::span<const double> y, int q, double hx,
                            double hy, StatWorkspace& ws);

/// Joint moving-block resample of (x, y) into out_x / out_y: block start
/// positions are drawn once and applied to both coordinates.
void mbb_resample_into(std::span<const double> x, std::span<const double> y, int zeta, Rng& rng,
                       std::vector<double>& out_x, std::vector<double>& out_y);

}  // namespace rct::detail
