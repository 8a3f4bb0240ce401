#pragma once

#include <vector>

#include "rct/bootstrap.hpp"
#include "rct/random.hpp"
#include "rct/simulate.hpp"

namespace rct {

enum class ProcessKind { Noise, Ar1, Arfima };

/// A symmetric pair-generating process: correlated noise, twin AR(1) with
/// common coefficient `param`, or twin fractional noise with common `param`.
struct ProcessSpec {
    ProcessKind kind = ProcessKind::Noise;
    double param = 0.0;  // theta for Ar1, d for Arfima, ignored for Noise
    CouplingMode coupling = CouplingMode::TrueAr1;

    double true_hurst() const;
    void validate() const;
};

/// arfima_truncation = 0 uses the simulator default max(length, 10000).
BivariatePair simulate_process(const ProcessSpec& process, double rho, int length, Seed seed,
                               int arfima_truncation = 0);

/// Grid for rejection-rate experiments. Replicate seeds derive from
/// (base_seed, process, T, q, rho, replicate); significance levels share the
/// bootstrap distribution of each replicate, as a multi-alpha readout of one
/// run. With hurst_mode == UserSupplied the harness plugs in the process's
/// true exponents; the DFA modes estimate them from each simulated pair.
struct ExperimentSpec {
    ProcessSpec process;
    std::vector<double> rho_values;
    std::vector<int> lengths;
    std::vector<int> q_values;
    std::vector<double> alphas;
    long replications = 1000;
    int bootstrap_replicates = 1000;
    HurstMode hurst_mode = HurstMode::UserSupplied;
    int block_size = 0;  // 0 -> per-test default
    Seed base_seed = 0;
    int threads = 0;  // 0 -> hardware concurrency

    void validate() const;
};

struct McCell {
    int length = 0;
    int q = 0;
    double alpha = 0.0;
    double rho = 0.0;
    long rejections = 0;
    long replications = 0;

    double rate() const { return static_cast<double>(rejections) / static_cast<double>(replications); }
    double se() const;
};

struct McTable {
    ExperimentSpec spec;
    std::vector<McCell> cells;
    double wall_seconds = 0.0;
};

/// Rejection rates over the full grid for replicates [0, R).
McTable run_size_power(const ExperimentSpec& spec);

/// Same, restricted to replicate range [rep_begin, rep_end); shards with the
/// same base seed merge into exactly the full-range table.
McTable run_size_power_shard(const ExperimentSpec& spec, long rep_begin, long rep_end);

/// Accumulate a shard into `into` (cells must describe the same grid).
void merge_tables(McTable& into, const McTable& shard);

/// Mean/sd of the statistic (no bootstrap) over a (param, rho) grid.
struct SweepConfig {
    ProcessKind kind = ProcessKind::Ar1;
    CouplingMode coupling = CouplingMode::TrueAr1;
    std::vector<double> param_grid;
    std::vector<double> rho_grid;
    int length = 5000;
    int q = 30;
    long replications = 1000;
    Seed seed = 0;
    bool estimate_hurst_dfa = false;  // false -> use the process's true exponents
    int threads = 0;

    void validate() const;
};

struct SweepPoint {
    double param = 0.0;
    double rho = 0.0;
    double mean_m = 0.0;
    double sd_m = 0.0;
};

struct SweepCurve {
    SweepConfig config;
    std::vector<SweepPoint> points;
};

SweepCurve run_statistic_sweep(const SweepConfig& cfg);

/// Default grids for the statistic sweep: theta 0..0.9 step 0.1 (Ar1) or
/// d 0..0.45 step 0.05 (Arfima), rho 0.2..1.0 step 0.2.
std::vector<double> default_sweep_param_grid(ProcessKind kind);
std::vector<double> default_sweep_rho_grid();

/// Ensemble scaling of the partial-sum covariance: one pair of length
/// max(n_grid) per replicate, endpoint partial sums read at every grid n, and
/// Cov(X_n, Y_n) estimated across replicates. The slope of log Cov against
/// log n approaches 2*H_xy for cross-persistent pairs and 1 for short-range
/// ones. Requires >= 4 grid points spanning at least a decade.
struct ScalingConfig {
    ProcessSpec process;
    double rho = 0.9;
    std::vector<int> n_grid;
    long replications = 2000;
    Seed seed = 0;
    int threads = 0;
    // Fractional pairs simulated with a truncated moving average undershoot
    // covariances at lags near the truncation point, which drags the measured
    // slope below 2*H_xy; a truncation of ~10x the largest n keeps the grid
    // inside the faithful range. 0 uses the simulator default.
    int arfima_truncation = 0;

    void validate() const;
};

struct ScalingPoint {
    int n = 0;
    double cov = 0.0;
    double se = 0.0;
    double tstat = 0.0;
};

struct ScalingResult {
    ScalingConfig config;
    std::vector<ScalingPoint> points;
    double slope = 0.0;
    double intercept = 0.0;
    bool slope_valid = false;  // false when some Cov(X_n, Y_n) <= 0
};

ScalingResult run_scaling_check(const ScalingConfig& cfg);

}  // namespace rct
