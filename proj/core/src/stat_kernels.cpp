#include "rct/detail/stat_kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rct::detail {

void demean_into(std::span<const double> in, std::vector<double>& out) {
    if (in.empty()) throw std::invalid_argument("empty input");
    double acc = 0.0;
    for (double v : in) acc += v;
    const double m = acc / static_cast<double>(in.size());
    out.resize(in.size());
    for (std::size_t i = 0; i < in.size(); ++i) out[i] = in[i] - m;
}

void partial_sum_into(std::span<const double> in, std::vector<double>& out) {
    out.resize(in.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < in.size(); ++i) {
        acc += in[i];
        out[i] = acc;
    }
}

double centered_covariance(std::span<const double> a, std::span<const double> b) {
    const std::size_t n = a.size();
    if (n < 2 || b.size() != n) throw std::invalid_argument("series too short for moment estimation");
    double ma = 0.0, mb = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        ma += a[i];
        mb += b[i];
    }
    ma /= static_cast<double>(n);
    mb /= static_cast<double>(n);
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += (a[i] - ma) * (b[i] - mb);
    return acc / static_cast<double>(n);
}

void lagged_cross_covariances(std::span<const double> xd, std::span<const double> yd, int q,
                              std::vector<double>& out) {
    const int n = static_cast<int>(xd.size());
    out.resize(2 * static_cast<std::size_t>(q) + 1);
    for (int k = 0; k <= q; ++k) {
        double pos = 0.0, neg = 0.0;
        for (int t = 0; t + k < n; ++t) {
            pos += xd[static_cast<std::size_t>(t)] * yd[static_cast<std::size_t>(t + k)];
            neg += xd[static_cast<std::size_t>(t + k)] * yd[static_cast<std::size_t>(t)];
        }
        out[static_cast<std::size_t>(q + k)] = pos / static_cast<double>(n);
        out[static_cast<std::size_t>(q - k)] = neg / static_cast<double>(n);
    }
}

double bartlett_weighted_sum(std::span<const double> gammas, int q) {
    double acc = gammas[static_cast<std::size_t>(q)];  // lag 0, weight 1
    for (int k = 1; k <= q; ++k) {
        const double w = 1.0 - static_cast<double>(k) / static_cast<double>(q + 1);
        acc += w * (gammas[static_cast<std::size_t>(q + k)] + gammas[static_cast<std::size_t>(q - k)]);
    }
    return acc;
}

namespace {

std::vector<int> dfa_scale_grid(int n, const DfaConfig& cfg) {
    const int s_min = cfg.min_scale;
    const int s_max = n / cfg.max_scale_divisor;
    if (s_min < 4 || s_max < 2 * s_min || cfg.num_scales < 4)
        throw std::invalid_argument("insufficient length for scale grid");
    std::vector<int> scales;
    scales.reserve(static_cast<std::size_t>(cfg.num_scales));
    const double lo = std::log(static_cast<double>(s_min));
    const double hi = std::log(static_cast<double>(s_max));
    for (int i = 0; i < cfg.num_scales; ++i) {
        const double f = cfg.num_scales == 1 ? 0.0
                                             : static_cast<double>(i) / static_cast<double>(cfg.num_scales - 1);
        const int s = static_cast<int>(std::lround(std::exp(lo + f * (hi - lo))));
        if (scales.empty() || s > scales.back()) scales.push_back(s);
    }
    if (scales.size() < 4) throw std::invalid_argument("insufficient length for scale grid");
    return scales;
}

// Mean squared residual of a linear fit within [start, start+s).
double window_msr(const double* y, int s, double sx, double sxx) {
    double sy = 0.0, sxy = 0.0, syy = 0.0;
    for (int i = 0; i < s; ++i) {
        const double v = y[i];
        sy += v;
        sxy += static_cast<double>(i) * v;
        syy += v * v;
    }
    const double n = static_cast<double>(s);
    const double den = n * sxx - sx * sx;
    const double beta = (n * sxy - sx * sy) / den;
    const double alpha = (sy - beta * sx) / n;
    double ssr = syy - alpha * sy - beta * sxy;
    if (ssr < 0.0) ssr = 0.0;
    return ssr / n;
}

}  // namespace

double dfa_hurst(std::span<const double> series, const DfaConfig& cfg,
                 std::vector<double>& profile, std::vector<int>* scales_out) {
    const int n = static_cast<int>(series.size());
    const std::vector<int> scales = dfa_scale_grid(n, cfg);

    double m = 0.0;
    for (double v : series) m += v;
    m /= static_cast<double>(n);
    profile.resize(series.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < series.size(); ++i) {
        acc += series[i] - m;
        profile[i] = acc;
    }

    // Regress log F(s) on log s across the grid.
    double slx = 0.0, sly = 0.0, slxx = 0.0, slxy = 0.0;
    for (int s : scales) {
        const int windows = n / s;
        const double sx = 0.5 * static_cast<double>(s) * static_cast<double>(s - 1);
        const double sxx = static_cast<double>(s - 1) * static_cast<double>(s) *
                           static_cast<double>(2 * s - 1) / 6.0;
        double total = 0.0;
        for (int w = 0; w < windows; ++w) total += window_msr(profile.data() + w * s, s, sx, sxx);
        for (int w = 0; w < windows; ++w)
            total += window_msr(profile.data() + (n - (w + 1) * s), s, sx, sxx);
        const double f2 = total / static_cast<double>(2 * windows);
        if (f2 <= 0.0) throw std::domain_error("degenerate series for fluctuation analysis");
        const double lx = std::log(static_cast<double>(s));
        const double ly = 0.5 * std::log(f2);
        slx += lx;
        sly += ly;
        slxx += lx * lx;
        slxy += lx * ly;
    }
    const double k = static_cast<double>(scales.size());
    const double slope = (k * slxy - slx * sly) / (k * slxx - slx * slx);
    if (scales_out) *scales_out = scales;
    return slope;
}

StatEval eval_rct_statistic(std::span<const double> x, std::span<const double> y, int q, double hx,
                            double hy, StatWorkspace& ws) {
    const int n = static_cast<int>(x.size());
    demean_into(x, ws.xd);
    demean_into(y, ws.yd);
    partial_sum_into(ws.xd, ws.xs);
    partial_sum_into(ws.yd, ws.ys);

    StatEval ev;
    ev.cov_partial_sums = centered_covariance(ws.xs, ws.ys);
    lagged_cross_covariances(ws.xd, ws.yd, q, ws.gammas);
    ev.s_xy_q = bartlett_weighted_sum(ws.gammas, q);

    double vx = 0.0, vy = 0.0;
    for (int t = 0; t < n; ++t) {
        vx += ws.xd[static_cast<std::size_t>(t)] * ws.xd[static_cast<std::size_t>(t)];
        vy += ws.yd[static_cast<std::size_t>(t)] * ws.yd[static_cast<std::size_t>(t)];
    }
    const double scale = std::sqrt(vx / n) * std::sqrt(vy / n);
    if (std::abs(ev.s_xy_q) < 1e-12 * scale || scale == 0.0) {
        ev.degenerate = true;
        return ev;
    }
    ev.m = std::pow(static_cast<double>(q), hx + hy - 1.0) * ev.cov_partial_sums /
           (static_cast<double>(n) * ev.s_xy_q);
    return ev;
}

void mbb_resample_into(std::span<const double> x, std::span<const double> y, int zeta, Rng& rng,
                       std::vector<double>& out_x, std::vector<double>& out_y) {
    const int n = static_cast<int>(x.size());
    out_x.resize(x.size());
    out_y.resize(y.size());
    int filled = 0;
    while (filled < n) {
        const int start = static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(n - zeta + 1)));
        const int take = std::min(zeta, n - filled);
        std::copy_n(x.begin() + start, take, out_x.begin() + filled);
        std::copy_n(y.begin() + start, take, out_y.begin() + filled);
        filled += take;
    }
}

}  // namespace rct::detail
