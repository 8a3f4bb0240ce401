#include "rct/bootstrap.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rct/detail/stat_kernels.hpp"
#include "rct/errors.hpp"

namespace rct {

namespace {

int integer_cbrt(int n) {
    int s = static_cast<int>(std::lround(std::cbrt(static_cast<double>(n))));
    while (s > 1 && s * s * s > n) --s;
    while ((s + 1) * (s + 1) * (s + 1) <= n) ++s;
    return s;
}

void validate_common(int length, double alpha, int replicates) {
    if (alpha <= 0.0 || alpha >= 1.0) throw std::invalid_argument("alpha outside (0,1)");
    if (replicates < 100) throw std::invalid_argument("need at least 100 bootstrap replicates");
    if (length < 4) throw std::invalid_argument("series too short for moment estimation");
}

int resolve_block_size(const MbbConfig& cfg, int length, int q) {
    int zeta = cfg.block_size;
    if (zeta == 0) zeta = default_block_size(length, q);
    if (zeta < 1 || zeta > length) throw std::invalid_argument("block size outside [1, T]");
    return zeta;
}

struct HurstPair {
    double hx;
    double hy;
};

HurstPair observed_hurst(const BivariatePair& p, const MbbConfig& cfg,
                         std::vector<double>& scratch) {
    if (cfg.hurst_mode == HurstMode::UserSupplied) return {cfg.hx, cfg.hy};
    return {detail::dfa_hurst(p.x().span(), cfg.dfa, scratch),
            detail::dfa_hurst(p.y().span(), cfg.dfa, scratch)};
}

}  // namespace

int default_block_size(int length, int q) {
    const int base = integer_cbrt(length);
    const int zeta = std::max(base, q + 1);
    return std::min(zeta, length);
}

BivariatePair mbb_resample(const BivariatePair& p, int zeta, Seed seed) {
    const int n = p.length();
    if (zeta < 1 || zeta > n) throw std::invalid_argument("block size outside [1, T]");
    Rng rng(seed);
    std::vector<double> x, y;
    detail::mbb_resample_into(p.x().span(), p.y().span(), zeta, rng, x, y);
    return BivariatePair(Series(std::move(x)), Series(std::move(y)));
}

std::pair<double, double> empirical_ci(std::vector<double> stats, double alpha) {
    if (stats.empty()) throw std::invalid_argument("empty bootstrap distribution");
    std::sort(stats.begin(), stats.end());
    const auto n = static_cast<double>(stats.size());
    auto rank = [&](double p) {
        auto idx = static_cast<std::size_t>(std::ceil(p * n));
        if (idx < 1) idx = 1;
        if (idx > stats.size()) idx = stats.size();
        return stats[idx - 1];
    };
    return {rank(alpha / 2.0), rank(1.0 - alpha / 2.0)};
}

double bootstrap_p_value(const std::vector<double>& stats, double observed) {
    std::size_t ge = 0, le = 0;
    for (double s : stats) {
        if (s >= observed) ++ge;
        if (s <= observed) ++le;
    }
    const double b = static_cast<double>(stats.size());
    const double r_plus = (1.0 + static_cast<double>(ge)) / (b + 1.0);
    const double r_minus = (1.0 + static_cast<double>(le)) / (b + 1.0);
    return std::min(1.0, 2.0 * std::min(r_plus, r_minus));
}

bool reject_at(const RctResult& result, double alpha, double* ci_low, double* ci_high) {
    const auto [lo, hi] = empirical_ci(result.boot_stats, alpha);
    if (ci_low) *ci_low = lo;
    if (ci_high) *ci_high = hi;
    return result.observed.m < lo || result.observed.m > hi;
}

RctResult rct_test(const BivariatePair& p, int q, const MbbConfig& cfg) {
    const int n = p.length();
    validate_common(n, cfg.alpha, cfg.replicates);
    if (q < 1 || q > n - 2) throw std::invalid_argument("lag exceeds sample");
    const int zeta = resolve_block_size(cfg, n, q);

    detail::StatWorkspace ws;
    const HurstPair obs_h = observed_hurst(p, cfg, ws.profile);
    const detail::StatEval obs =
        detail::eval_rct_statistic(p.x().span(), p.y().span(), q, obs_h.hx, obs_h.hy, ws);
    if (obs.degenerate) throw DegenerateStatistic("degenerate long-run covariance");

    RctResult result;
    result.observed = RctStatistic{obs.m, q, obs_h.hx, obs_h.hy, obs.cov_partial_sums,
                                   obs.s_xy_q, n};
    result.block_size = zeta;
    result.hurst_mode = cfg.hurst_mode;
    result.boot_stats.reserve(static_cast<std::size_t>(cfg.replicates));

    for (int b = 0; b < cfg.replicates; ++b) {
        Rng rng(derive_seed(cfg.seed, 0x6d6262ULL, static_cast<std::uint64_t>(b)));
        detail::mbb_resample_into(p.x().span(), p.y().span(), zeta, rng, ws.boot_x, ws.boot_y);
        double hx = obs_h.hx, hy = obs_h.hy;
        if (cfg.hurst_mode == HurstMode::ReestimatePerResample) {
            hx = detail::dfa_hurst(ws.boot_x, cfg.dfa, ws.profile);
            hy = detail::dfa_hurst(ws.boot_y, cfg.dfa, ws.profile);
        }
        const detail::StatEval ev = detail::eval_rct_statistic(ws.boot_x, ws.boot_y, q, hx, hy, ws);
        if (ev.degenerate) {
            ++result.failed_resamples;
            continue;
        }
        result.boot_stats.push_back(ev.m);
    }
    if (result.failed_resamples * 20 > cfg.replicates)
        throw BootstrapInstability("bootstrap instability");

    const auto [lo, hi] = empirical_ci(result.boot_stats, cfg.alpha);
    result.ci_low = lo;
    result.ci_high = hi;
    result.p_value = bootstrap_p_value(result.boot_stats, result.observed.m);
    result.reject = result.observed.m < lo || result.observed.m > hi;
    return result;
}

std::vector<QSweepRow> q_sweep(const BivariatePair& p, int q_min, int q_max,
                               const MbbConfig& cfg) {
    const int n = p.length();
    validate_common(n, cfg.alpha, cfg.replicates);
    if (q_min < 1 || q_min > q_max || q_max > n - 2)
        throw std::invalid_argument("q range outside [1, T-2]");
    // One block size for the whole sweep keeps resamples shareable across q.
    const int zeta = cfg.block_size == 0 ? std::min(default_block_size(n, 0), n) : cfg.block_size;
    if (zeta < 1 || zeta > n) throw std::invalid_argument("block size outside [1, T]");

    detail::StatWorkspace ws;
    const HurstPair obs_h = observed_hurst(p, cfg, ws.profile);

    const std::size_t n_q = static_cast<std::size_t>(q_max - q_min + 1);
    std::vector<RctStatistic> observed(n_q);
    {
        detail::demean_into(p.x().span(), ws.xd);
        detail::demean_into(p.y().span(), ws.yd);
        detail::partial_sum_into(ws.xd, ws.xs);
        detail::partial_sum_into(ws.yd, ws.ys);
        const double cov = detail::centered_covariance(ws.xs, ws.ys);
        detail::lagged_cross_covariances(ws.xd, ws.yd, q_max, ws.gammas);
        const double sd_scale = std::sqrt(detail::centered_covariance(ws.xd, ws.xd) *
                                          detail::centered_covariance(ws.yd, ws.yd));
        for (std::size_t i = 0; i < n_q; ++i) {
            const int q = q_min + static_cast<int>(i);
            // The shared buffer is centered at q_max; hand each q its window.
            const std::span<const double> window(ws.gammas.data() + (q_max - q),
                                                 2 * static_cast<std::size_t>(q) + 1);
            const double s = detail::bartlett_weighted_sum(window, q);
            if (std::abs(s) < 1e-12 * sd_scale)
                throw DegenerateStatistic("degenerate long-run covariance");
            const double m = std::pow(static_cast<double>(q), obs_h.hx + obs_h.hy - 1.0) * cov /
                             (static_cast<double>(n) * s);
            observed[i] = RctStatistic{m, q, obs_h.hx, obs_h.hy, cov, s, n};
        }
    }

    std::vector<std::vector<double>> boot(n_q);
    std::vector<int> failed(n_q, 0);
    for (auto& v : boot) v.reserve(static_cast<std::size_t>(cfg.replicates));

    for (int b = 0; b < cfg.replicates; ++b) {
        Rng rng(derive_seed(cfg.seed, 0x6d6262ULL, static_cast<std::uint64_t>(b)));
        detail::mbb_resample_into(p.x().span(), p.y().span(), zeta, rng, ws.boot_x, ws.boot_y);
        double hx = obs_h.hx, hy = obs_h.hy;
        if (cfg.hurst_mode == HurstMode::ReestimatePerResample) {
            hx = detail::dfa_hurst(ws.boot_x, cfg.dfa, ws.profile);
            hy = detail::dfa_hurst(ws.boot_y, cfg.dfa, ws.profile);
        }
        detail::demean_into(ws.boot_x, ws.xd);
        detail::demean_into(ws.boot_y, ws.yd);
        detail::partial_sum_into(ws.xd, ws.xs);
        detail::partial_sum_into(ws.yd, ws.ys);
        const double cov = detail::centered_covariance(ws.xs, ws.ys);
        detail::lagged_cross_covariances(ws.xd, ws.yd, q_max, ws.gammas);
        const double sd_scale = std::sqrt(detail::centered_covariance(ws.xd, ws.xd) *
                                          detail::centered_covariance(ws.yd, ws.yd));
        for (std::size_t i = 0; i < n_q; ++i) {
            const int q = q_min + static_cast<int>(i);
            const std::span<const double> window(ws.gammas.data() + (q_max - q),
                                                 2 * static_cast<std::size_t>(q) + 1);
            const double s = detail::bartlett_weighted_sum(window, q);
            if (std::abs(s) < 1e-12 * sd_scale) {
                ++failed[i];
                continue;
            }
            boot[i].push_back(std::pow(static_cast<double>(q), hx + hy - 1.0) * cov /
                              (static_cast<double>(n) * s));
        }
    }

    std::vector<QSweepRow> rows(n_q);
    for (std::size_t i = 0; i < n_q; ++i) {
        if (failed[i] * 20 > cfg.replicates) throw BootstrapInstability("bootstrap instability");
        QSweepRow& row = rows[i];
        row.stat = observed[i];
        const auto [lo, hi] = empirical_ci(boot[i], cfg.alpha);
        row.ci_low = lo;
        row.ci_high = hi;
        row.p_value = bootstrap_p_value(boot[i], row.stat.m);
        row.reject = row.stat.m < lo || row.stat.m > hi;
    }
    return rows;
}

}  // namespace rct
