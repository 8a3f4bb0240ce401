#include "rct/estimators.hpp"

#include <cmath>
#include <stdexcept>

#include "rct/detail/stat_kernels.hpp"
#include "rct/errors.hpp"

namespace rct {

HacEstimate hac_cross_covariance(const BivariatePair& p, int q) {
    const int n = p.length();
    if (q < 0 || q > n - 2) throw std::invalid_argument("lag exceeds sample");

    detail::StatWorkspace ws;
    detail::demean_into(p.x().span(), ws.xd);
    detail::demean_into(p.y().span(), ws.yd);
    detail::lagged_cross_covariances(ws.xd, ws.yd, q, ws.gammas);
    return HacEstimate{q, detail::bartlett_weighted_sum(ws.gammas, q)};
}

HurstEstimate estimate_hurst(const Series& s, const DfaConfig& config) {
    HurstEstimate est;
    std::vector<double> scratch;
    est.h = detail::dfa_hurst(s.span(), config, scratch, &est.scales);
    est.method = "dfa1";
    if (!std::isfinite(est.h)) throw std::domain_error("fluctuation regression did not converge");
    return est;
}

HurstEstimate fixed_hurst(double h) {
    if (!std::isfinite(h)) throw std::invalid_argument("hurst exponent must be finite");
    return HurstEstimate{h, "fixed", {}};
}

RctStatistic rct_statistic(const BivariatePair& p, int q, double hx, double hy) {
    const int n = p.length();
    if (q < 1 || q > n - 2) throw std::invalid_argument("lag exceeds sample");

    detail::StatWorkspace ws;
    const detail::StatEval ev = detail::eval_rct_statistic(p.x().span(), p.y().span(), q, hx, hy, ws);
    if (ev.degenerate) throw DegenerateStatistic("degenerate long-run covariance");

    RctStatistic stat;
    stat.m = ev.m;
    stat.q = q;
    stat.hx = hx;
    stat.hy = hy;
    stat.cov_partial_sums = ev.cov_partial_sums;
    stat.s_xy_q = ev.s_xy_q;
    stat.length = n;
    return stat;
}

}  // namespace rct
