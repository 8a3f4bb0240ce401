#include "rct/montecarlo.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <mutex>
#include <span>
#include <stdexcept>

#include "rct/detail/parallel.hpp"
#include "rct/detail/stat_kernels.hpp"
#include "rct/errors.hpp"

namespace rct {

namespace {

std::uint64_t kind_tag(ProcessKind kind) {
    switch (kind) {
        case ProcessKind::Noise: return 1;
        case ProcessKind::Ar1: return 2;
        case ProcessKind::Arfima: return 3;
    }
    return 0;
}

}  // namespace

double ProcessSpec::true_hurst() const {
    return kind == ProcessKind::Arfima ? param + 0.5 : 0.5;
}

void ProcessSpec::validate() const {
    switch (kind) {
        case ProcessKind::Noise:
            break;
        case ProcessKind::Ar1:
            if (std::abs(param) >= 1.0)
                throw std::invalid_argument("AR coefficient outside stationary region");
            break;
        case ProcessKind::Arfima:
            if (param < 0.0 || param >= 0.5)
                throw std::invalid_argument("fractional differencing parameter outside [0, 0.5)");
            break;
    }
}

BivariatePair simulate_process(const ProcessSpec& process, double rho, int length, Seed seed,
                               int arfima_truncation) {
    switch (process.kind) {
        case ProcessKind::Noise:
            return gaussian_pair(length, rho, seed);
        case ProcessKind::Ar1: {
            Ar1PairSpec spec;
            spec.theta1 = process.param;
            spec.theta2 = process.param;
            spec.rho = rho;
            spec.length = length;
            spec.coupling = process.coupling;
            return simulate_ar1_pair(spec, seed);
        }
        case ProcessKind::Arfima: {
            ArfimaPairSpec spec;
            spec.d1 = process.param;
            spec.d2 = process.param;
            spec.rho = rho;
            spec.length = length;
            spec.truncation = arfima_truncation;
            return simulate_arfima_pair(spec, seed);
        }
    }
    throw std::invalid_argument("unknown process kind");
}

void ExperimentSpec::validate() const {
    process.validate();
    if (rho_values.empty() || lengths.empty() || q_values.empty() || alphas.empty())
        throw std::invalid_argument("experiment grid must be nonempty");
    for (double r : rho_values)
        if (std::abs(r) > 1.0) throw std::invalid_argument("innovation correlation outside [-1,1]");
    for (int t : lengths)
        if (t < 8) throw std::invalid_argument("length must be positive");
    for (std::size_t i = 0; i < lengths.size(); ++i)
        for (int q : q_values)
            if (q < 1 || q > lengths[i] - 2) throw std::invalid_argument("lag exceeds sample");
    for (double a : alphas)
        if (a <= 0.0 || a >= 1.0) throw std::invalid_argument("alpha outside (0,1)");
    if (replications < 1) throw std::invalid_argument("replications must be >= 1");
    if (bootstrap_replicates < 100)
        throw std::invalid_argument("need at least 100 bootstrap replicates");
}

double McCell::se() const {
    const double r = rate();
    return std::sqrt(r * (1.0 - r) / static_cast<double>(replications));
}

McTable run_size_power_shard(const ExperimentSpec& spec, long rep_begin, long rep_end) {
    spec.validate();
    if (rep_begin < 0 || rep_end < rep_begin || rep_end > spec.replications)
        throw std::invalid_argument("replicate range outside [0, R]");
    const auto t0 = std::chrono::steady_clock::now();

    McTable table;
    table.spec = spec;
    const std::size_t n_alpha = spec.alphas.size();

    for (int length : spec.lengths) {
        for (int q : spec.q_values) {
            for (double rho : spec.rho_values) {
                std::vector<long> rejections(n_alpha, 0);
                std::mutex sink;
                detail::parallel_for_chunks(
                    rep_begin, rep_end, spec.threads, [&](long lo, long hi) {
                        std::vector<long> local(n_alpha, 0);
                        MbbConfig cfg;
                        cfg.block_size = spec.block_size;
                        cfg.replicates = spec.bootstrap_replicates;
                        cfg.alpha = spec.alphas.front();
                        cfg.hurst_mode = spec.hurst_mode;
                        cfg.hx = spec.process.true_hurst();
                        cfg.hy = cfg.hx;
                        for (long r = lo; r < hi; ++r) {
                            const Seed cell_seed = derive_seed(
                                spec.base_seed, kind_tag(spec.process.kind),
                                key_bits(spec.process.param), static_cast<std::uint64_t>(length),
                                static_cast<std::uint64_t>(q), key_bits(rho),
                                static_cast<std::uint64_t>(r));
                            const BivariatePair pair = simulate_process(
                                spec.process, rho, length, derive_seed(cell_seed, 0));
                            cfg.seed = derive_seed(cell_seed, 1);
                            const RctResult result = rct_test(pair, q, cfg);
                            for (std::size_t a = 0; a < n_alpha; ++a)
                                if (reject_at(result, spec.alphas[a])) ++local[a];
                        }
                        std::lock_guard<std::mutex> lock(sink);
                        for (std::size_t a = 0; a < n_alpha; ++a) rejections[a] += local[a];
                    });
                for (std::size_t a = 0; a < n_alpha; ++a) {
                    McCell cell;
                    cell.length = length;
                    cell.q = q;
                    cell.alpha = spec.alphas[a];
                    cell.rho = rho;
                    cell.rejections = rejections[a];
                    cell.replications = rep_end - rep_begin;
                    table.cells.push_back(cell);
                }
            }
        }
    }
    table.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return table;
}

McTable run_size_power(const ExperimentSpec& spec) {
    return run_size_power_shard(spec, 0, spec.replications);
}

void merge_tables(McTable& into, const McTable& shard) {
    if (into.cells.size() != shard.cells.size())
        throw std::invalid_argument("cannot merge tables over different grids");
    for (std::size_t i = 0; i < into.cells.size(); ++i) {
        McCell& a = into.cells[i];
        const McCell& b = shard.cells[i];
        if (a.length != b.length || a.q != b.q || a.alpha != b.alpha || a.rho != b.rho)
            throw std::invalid_argument("cannot merge tables over different grids");
        a.rejections += b.rejections;
        a.replications += b.replications;
    }
    into.wall_seconds += shard.wall_seconds;
}

void SweepConfig::validate() const {
    if (kind == ProcessKind::Noise) throw std::invalid_argument("sweep expects Ar1 or Arfima");
    if (param_grid.empty() || rho_grid.empty()) throw std::invalid_argument("sweep grid must be nonempty");
    ProcessSpec probe{kind, 0.0, coupling};
    for (double v : param_grid) {
        probe.param = v;
        probe.validate();
    }
    for (double r : rho_grid)
        if (std::abs(r) > 1.0) throw std::invalid_argument("innovation correlation outside [-1,1]");
    if (length < 8 || q < 1 || q > length - 2) throw std::invalid_argument("lag exceeds sample");
    if (replications < 2) throw std::invalid_argument("replications must be >= 2");
}

std::vector<double> default_sweep_param_grid(ProcessKind kind) {
    std::vector<double> grid;
    if (kind == ProcessKind::Ar1) {
        for (int i = 0; i <= 9; ++i) grid.push_back(0.1 * i);
    } else {
        for (int i = 0; i <= 9; ++i) grid.push_back(0.05 * i);
    }
    return grid;
}

std::vector<double> default_sweep_rho_grid() { return {0.2, 0.4, 0.6, 0.8, 1.0}; }

SweepCurve run_statistic_sweep(const SweepConfig& cfg) {
    cfg.validate();
    SweepCurve curve;
    curve.config = cfg;

    for (double param : cfg.param_grid) {
        const ProcessSpec process{cfg.kind, param, cfg.coupling};
        for (double rho : cfg.rho_grid) {
            std::vector<double> stats(static_cast<std::size_t>(cfg.replications), 0.0);
            detail::parallel_for_chunks(0, cfg.replications, cfg.threads, [&](long lo, long hi) {
                detail::StatWorkspace ws;
                for (long r = lo; r < hi; ++r) {
                    const Seed seed =
                        derive_seed(cfg.seed, 0x737765ULL, kind_tag(cfg.kind), key_bits(param),
                                    key_bits(rho), static_cast<std::uint64_t>(r));
                    const BivariatePair pair = simulate_process(process, rho, cfg.length, seed);
                    double hx = process.true_hurst(), hy = hx;
                    if (cfg.estimate_hurst_dfa) {
                        hx = detail::dfa_hurst(pair.x().span(), DfaConfig{}, ws.profile);
                        hy = detail::dfa_hurst(pair.y().span(), DfaConfig{}, ws.profile);
                    }
                    const detail::StatEval ev = detail::eval_rct_statistic(
                        pair.x().span(), pair.y().span(), cfg.q, hx, hy, ws);
                    if (ev.degenerate) throw DegenerateStatistic("degenerate long-run covariance");
                    stats[static_cast<std::size_t>(r)] = ev.m;
                }
            });
            double m1 = 0.0;
            for (double v : stats) m1 += v;
            m1 /= static_cast<double>(stats.size());
            double m2 = 0.0;
            for (double v : stats) m2 += (v - m1) * (v - m1);
            const double sd = std::sqrt(m2 / static_cast<double>(stats.size() - 1));
            curve.points.push_back(SweepPoint{param, rho, m1, sd});
        }
    }
    return curve;
}

void ScalingConfig::validate() const {
    process.validate();
    if (std::abs(rho) > 1.0) throw std::invalid_argument("innovation correlation outside [-1,1]");
    if (n_grid.size() < 4) throw std::invalid_argument("scaling grid needs at least 4 points");
    for (std::size_t i = 0; i < n_grid.size(); ++i) {
        if (n_grid[i] < 2) throw std::invalid_argument("scaling grid lengths must be >= 2");
        if (i > 0 && n_grid[i] <= n_grid[i - 1])
            throw std::invalid_argument("scaling grid must be strictly increasing");
    }
    if (n_grid.back() < 10 * n_grid.front())
        throw std::invalid_argument("scaling grid must span at least a decade");
    if (replications < 2) throw std::invalid_argument("replications must be >= 2");
    if (arfima_truncation < 0) throw std::invalid_argument("truncation must be >= 1");
}

ScalingResult run_scaling_check(const ScalingConfig& cfg) {
    cfg.validate();
    ScalingResult result;
    result.config = cfg;

    const int n_max = cfg.n_grid.back();
    const std::size_t n_pts = cfg.n_grid.size();
    const auto reps = static_cast<std::size_t>(cfg.replications);
    std::vector<double> ex(n_pts * reps), ey(n_pts * reps);

    detail::parallel_for_chunks(0, cfg.replications, cfg.threads, [&](long lo, long hi) {
        for (long r = lo; r < hi; ++r) {
            const Seed seed = derive_seed(cfg.seed, 0x7363ULL, kind_tag(cfg.process.kind),
                                          key_bits(cfg.process.param), key_bits(cfg.rho),
                                          static_cast<std::uint64_t>(r));
            const BivariatePair pair =
                simulate_process(cfg.process, cfg.rho, n_max, seed, cfg.arfima_truncation);
            // Raw partial sums: the simulated processes have mean zero by
            // construction, and per-sample demeaning would pin X_T to zero.
            double accx = 0.0, accy = 0.0;
            std::size_t next = 0;
            for (int t = 0; t < n_max && next < n_pts; ++t) {
                accx += pair.x()[static_cast<std::size_t>(t)];
                accy += pair.y()[static_cast<std::size_t>(t)];
                if (t + 1 == cfg.n_grid[next]) {
                    ex[next * reps + static_cast<std::size_t>(r)] = accx;
                    ey[next * reps + static_cast<std::size_t>(r)] = accy;
                    ++next;
                }
            }
        }
    });

    bool all_positive = true;
    for (std::size_t i = 0; i < n_pts; ++i) {
        const std::span<const double> xs(ex.data() + i * reps, reps);
        const std::span<const double> ys(ey.data() + i * reps, reps);
        double mx = 0.0, my = 0.0;
        for (std::size_t r = 0; r < reps; ++r) {
            mx += xs[r];
            my += ys[r];
        }
        mx /= static_cast<double>(reps);
        my /= static_cast<double>(reps);
        double cov = 0.0, var_u = 0.0;
        for (std::size_t r = 0; r < reps; ++r) cov += (xs[r] - mx) * (ys[r] - my);
        cov /= static_cast<double>(reps - 1);
        for (std::size_t r = 0; r < reps; ++r) {
            const double u = (xs[r] - mx) * (ys[r] - my) - cov;
            var_u += u * u;
        }
        var_u /= static_cast<double>(reps - 1);
        const double se = std::sqrt(var_u / static_cast<double>(reps));
        ScalingPoint pt;
        pt.n = cfg.n_grid[i];
        pt.cov = cov;
        pt.se = se;
        pt.tstat = se > 0.0 ? cov / se : 0.0;
        result.points.push_back(pt);
        if (cov <= 0.0) all_positive = false;
    }

    if (all_positive) {
        double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
        for (const ScalingPoint& pt : result.points) {
            const double lx = std::log(static_cast<double>(pt.n));
            const double ly = std::log(pt.cov);
            sx += lx;
            sy += ly;
            sxx += lx * lx;
            sxy += lx * ly;
        }
        const double k = static_cast<double>(result.points.size());
        result.slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
        result.intercept = (sy - result.slope * sx) / k;
        result.slope_valid = true;
    }
    return result;
}

}  // namespace rct
