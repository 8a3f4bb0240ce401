#pragma once

#include <string>
#include <vector>

#include "rct/series.hpp"

namespace rct {

/// Bartlett-kernel long-run cross-covariance truncated at lag budget q.
struct HacEstimate {
    int q = 0;
    double value = 0.0;
};

/// Scale grid for detrended fluctuation analysis: window sizes log-spaced
/// between min_scale and length / max_scale_divisor.
struct DfaConfig {
    int min_scale = 10;
    int max_scale_divisor = 5;
    int num_scales = 12;
};

struct HurstEstimate {
    double h = 0.5;
    std::string method;       // "dfa1" or "fixed"
    std::vector<int> scales;  // window sizes used (empty for "fixed")
};

/// The rescaled covariance statistic and every quantity it is built from, so
/// that m == q^(hx+hy-1) * cov_partial_sums / (length * s_xy_q) is
/// reconstructible from the fields.
struct RctStatistic {
    double m = 0.0;
    int q = 0;
    double hx = 0.5;
    double hy = 0.5;
    double cov_partial_sums = 0.0;
    double s_xy_q = 0.0;
    int length = 0;
};

/// Long-run cross-covariance estimate
///   s = sum_{k=-q}^{q} (1 - |k|/(q+1)) * gamma_xy(k)
/// with the same divisor-T covariances as cross_covariance. With x == y the
/// Bartlett weights make the result nonnegative. Requires 0 <= q <= T-2.
HacEstimate hac_cross_covariance(const BivariatePair& p, int q);

/// Hurst exponent via DFA-1: the series is integrated into a profile, each
/// window of size s is linearly detrended, and H is the slope of
/// log F(s) against log s. Windows are taken from both ends so a remainder
/// at the tail is not wasted. Errors when the grid would collapse below four
/// distinct scales ("insufficient length for scale grid").
HurstEstimate estimate_hurst(const Series& s, const DfaConfig& config = {});

/// Pass-through for an externally known or assumed exponent.
HurstEstimate fixed_hurst(double h);

/// Rescaled covariance statistic M_T(q). Both series are demeaned, the
/// covariance of their partial-sum paths over t = 1..T (divisor T) forms the
/// numerator, and the Bartlett long-run cross-covariance the denominator:
///   M = q^(hx+hy-1) * Cov(X, Y) / (T * s_xy_q).
/// A vanishing s_xy_q (below 1e-12 * sd_x * sd_y) throws DegenerateStatistic,
/// since the statistic presumes a nonzero long-run cross-covariance.
RctStatistic rct_statistic(const BivariatePair& p, int q, double hx, double hy);

}  // namespace rct
