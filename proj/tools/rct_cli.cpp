// Command-line front end for the rescaled covariance test: test and sweep a
// pair file, export cross-correlations, ingest intraday bars into daily
// volatility records, and drive the Monte Carlo experiments.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rct/errors.hpp"
#include "rct/io.hpp"
#include "rct/version.hpp"

using namespace rct;

namespace {

struct GlobalOptions {
    Seed seed = 12345;
    int threads = 0;
    std::string out;
    std::string format = "csv";

    OutputFormat output_format() const {
        return format == "json" ? OutputFormat::Json : OutputFormat::Csv;
    }
};

void emit(const GlobalOptions& global, const std::string& content, const std::string& command,
          std::vector<std::pair<std::string, std::string>> options) {
    if (global.out.empty()) {
        std::fputs(content.c_str(), stdout);
        return;
    }
    write_text_file(global.out, content);
    ManifestInfo info;
    info.command = command;
    info.seed = global.seed;
    options.emplace_back("format", global.format);
    options.emplace_back("threads", std::to_string(global.threads));
    info.options = std::move(options);
    info.outputs = {global.out};
    write_text_file(global.out + ".manifest.json", render_manifest(info));
}

HurstMode parse_hurst_mode(const std::string& name) {
    if (name == "estimate") return HurstMode::ReestimatePerResample;
    if (name == "fixed") return HurstMode::FixedFromOriginal;
    if (name == "user") return HurstMode::UserSupplied;
    throw InputError("unknown hurst mode: " + name);
}

ProcessSpec make_process(const std::string& name, double theta, double d,
                         const std::string& coupling) {
    ProcessSpec process;
    if (name == "noise") {
        process.kind = ProcessKind::Noise;
    } else if (name == "ar1") {
        process.kind = ProcessKind::Ar1;
        process.param = theta;
    } else if (name == "arfima") {
        process.kind = ProcessKind::Arfima;
        process.param = d;
    } else {
        throw InputError("unknown process: " + name);
    }
    process.coupling = coupling == "printed" ? CouplingMode::AsPrinted : CouplingMode::TrueAr1;
    return process;
}

std::string dtos(double v) { return format_double(v); }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rescaled covariance test for power-law cross-correlations"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    GlobalOptions global;
    app.add_option("--seed", global.seed, "base seed for all randomness");
    app.add_option("--threads", global.threads, "worker threads (0 = hardware)");
    app.add_option("--out", global.out, "output file (stdout when omitted)");
    app.add_option("--format", global.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));

    // ---- test ----
    auto* cmd_test = app.add_subcommand("test", "rescaled covariance test on a pair file");
    cmd_test->fallthrough();
    std::string pair_path;
    int q = 10;
    double alpha = 0.05;
    int replicates = 1000;
    int zeta = 0;
    std::string hurst = "estimate";
    double hx = 0.5, hy = 0.5;
    cmd_test->add_option("--pair", pair_path, "pair csv (x,y or date,x,y)")->required();
    cmd_test->add_option("--q", q, "lag budget of the long-run covariance")->required();
    cmd_test->add_option("--alpha", alpha, "significance level");
    cmd_test->add_option("--B", replicates, "bootstrap replicates");
    cmd_test->add_option("--zeta", zeta, "block size (0 = default)");
    cmd_test->add_option("--hurst", hurst, "estimate | fixed | user")
        ->check(CLI::IsMember({"estimate", "fixed", "user"}));
    cmd_test->add_option("--hx", hx, "supplied exponent for x (hurst=user)");
    cmd_test->add_option("--hy", hy, "supplied exponent for y (hurst=user)");

    // ---- sweep ----
    auto* cmd_sweep = app.add_subcommand("sweep", "test across a q range with shared resamples");
    cmd_sweep->fallthrough();
    int q_min = 1, q_max = 100;
    cmd_sweep->add_option("--pair", pair_path, "pair csv")->required();
    cmd_sweep->add_option("--q-min", q_min, "lowest q");
    cmd_sweep->add_option("--q-max", q_max, "highest q");
    cmd_sweep->add_option("--alpha", alpha, "significance level");
    cmd_sweep->add_option("--B", replicates, "bootstrap replicates");
    cmd_sweep->add_option("--zeta", zeta, "block size (0 = default)");
    cmd_sweep->add_option("--hurst", hurst, "estimate | fixed | user")
        ->check(CLI::IsMember({"estimate", "fixed", "user"}));
    cmd_sweep->add_option("--hx", hx, "supplied exponent for x (hurst=user)");
    cmd_sweep->add_option("--hy", hy, "supplied exponent for y (hurst=user)");

    // ---- ccf ----
    auto* cmd_ccf = app.add_subcommand("ccf", "export the cross-correlation function");
    cmd_ccf->fallthrough();
    int max_lag = 100;
    cmd_ccf->add_option("--pair", pair_path, "pair csv")->required();
    cmd_ccf->add_option("--max-lag", max_lag, "symmetric lag window");

    // ---- ingest ----
    auto* cmd_ingest = app.add_subcommand("ingest", "intraday bars to daily volatility records");
    cmd_ingest->fallthrough();
    std::string intraday_path;
    IngestOptions ingest_options;
    cmd_ingest->add_option("--intraday", intraday_path, "csv date,time,price[,volume]")->required();
    cmd_ingest->add_option("--grid-minutes", ingest_options.grid_minutes, "sampling grid");
    cmd_ingest->add_option("--min-bars", ingest_options.min_bars, "drop days with fewer bars");
    cmd_ingest->add_flag("--include-overnight", ingest_options.include_overnight,
                         "add the squared overnight return to the realized variance");
    cmd_ingest->add_option("--detrend-order", ingest_options.detrend_order,
                           "polynomial order for the volume trend");

    // ---- mc-size-power ----
    auto* cmd_mc = app.add_subcommand("mc-size-power", "rejection-rate grid");
    cmd_mc->fallthrough();
    std::string process_name = "noise";
    std::string coupling = "true";
    double theta = 0.5, frac_d = 0.4;
    std::vector<double> rho_list{0.9};
    std::vector<int> t_list{500};
    std::vector<int> q_list{1, 5, 10, 30};
    std::vector<double> alpha_list{0.01, 0.05, 0.1};
    long mc_replications = 1000;
    std::string mc_hurst = "user";
    cmd_mc->add_option("--process", process_name, "noise | ar1 | arfima")
        ->check(CLI::IsMember({"noise", "ar1", "arfima"}));
    cmd_mc->add_option("--theta", theta, "AR coefficient (ar1)");
    cmd_mc->add_option("--d", frac_d, "fractional parameter (arfima)");
    cmd_mc->add_option("--coupling", coupling, "true | printed (ar1 drive of y)")
        ->check(CLI::IsMember({"true", "printed"}));
    cmd_mc->add_option("--rho", rho_list, "innovation correlations")->delimiter(',');
    cmd_mc->add_option("--T", t_list, "series lengths")->delimiter(',');
    cmd_mc->add_option("--q", q_list, "lag budgets")->delimiter(',');
    cmd_mc->add_option("--alpha", alpha_list, "significance levels")->delimiter(',');
    cmd_mc->add_option("--R", mc_replications, "replications per cell");
    cmd_mc->add_option("--B", replicates, "bootstrap replicates");
    cmd_mc->add_option("--zeta", zeta, "block size (0 = default)");
    cmd_mc->add_option("--hurst", mc_hurst, "user (true exponents) | estimate | fixed")
        ->check(CLI::IsMember({"user", "estimate", "fixed"}));

    // ---- mc-fig1 ----
    auto* cmd_fig = app.add_subcommand("mc-fig1", "statistic mean/sd over a parameter sweep");
    cmd_fig->fallthrough();
    std::string kind_name = "ar1";
    std::vector<double> param_grid;
    std::vector<double> rho_grid;
    int sweep_length = 5000;
    int sweep_q = 30;
    long sweep_replications = 1000;
    bool sweep_dfa = false;
    cmd_fig->add_option("--kind", kind_name, "ar1 | arfima")
        ->check(CLI::IsMember({"ar1", "arfima"}));
    cmd_fig->add_option("--param-grid", param_grid, "theta or d grid (default per kind)")
        ->delimiter(',');
    cmd_fig->add_option("--rho-grid", rho_grid, "innovation correlation grid")->delimiter(',');
    cmd_fig->add_option("--T", sweep_length, "series length");
    cmd_fig->add_option("--q", sweep_q, "lag budget");
    cmd_fig->add_option("--R", sweep_replications, "replications per point");
    cmd_fig->add_flag("--estimate-hurst", sweep_dfa,
                      "estimate exponents per replicate instead of using true values");

    // ---- mc-scaling ----
    auto* cmd_scaling = app.add_subcommand("mc-scaling", "partial-sum covariance scaling");
    cmd_scaling->fallthrough();
    std::vector<int> n_grid{100, 215, 464, 1000, 2154, 4642, 10000};
    double scaling_rho = 0.9;
    long scaling_replications = 2000;
    cmd_scaling->add_option("--process", process_name, "noise | ar1 | arfima")
        ->check(CLI::IsMember({"noise", "ar1", "arfima"}));
    cmd_scaling->add_option("--theta", theta, "AR coefficient (ar1)");
    cmd_scaling->add_option("--d", frac_d, "fractional parameter (arfima)");
    cmd_scaling->add_option("--rho", scaling_rho, "innovation correlation");
    cmd_scaling->add_option("--n", n_grid, "partial-sum lengths")->delimiter(',');
    cmd_scaling->add_option("--R", scaling_replications, "replications");
    int scaling_trunc = 0;
    cmd_scaling->add_option("--trunc", scaling_trunc,
                            "moving-average truncation for fractional pairs (0 = default)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (app.got_subcommand(cmd_test) || app.got_subcommand(cmd_sweep)) {
            const PairData data = read_pair_csv(pair_path);
            MbbConfig cfg;
            cfg.block_size = zeta;
            cfg.replicates = replicates;
            cfg.alpha = alpha;
            cfg.hurst_mode = parse_hurst_mode(hurst);
            cfg.hx = hx;
            cfg.hy = hy;
            cfg.seed = global.seed;
            std::vector<std::pair<std::string, std::string>> options{
                {"pair", pair_path},       {"alpha", dtos(alpha)},
                {"B", std::to_string(replicates)}, {"zeta", std::to_string(zeta)},
                {"hurst", hurst}};
            if (app.got_subcommand(cmd_test)) {
                const RctResult result = rct_test(data.pair, q, cfg);
                options.emplace_back("q", std::to_string(q));
                emit(global, render_rct_result(result, global.output_format()), "test", options);
            } else {
                const std::vector<QSweepRow> rows = q_sweep(data.pair, q_min, q_max, cfg);
                options.emplace_back("q_min", std::to_string(q_min));
                options.emplace_back("q_max", std::to_string(q_max));
                emit(global, render_q_sweep(rows, global.output_format()), "sweep", options);
            }
        } else if (app.got_subcommand(cmd_ccf)) {
            const PairData data = read_pair_csv(pair_path);
            const CcfEstimate est = ccf(data.pair, max_lag);
            emit(global, render_ccf(est, global.output_format()), "ccf",
                 {{"pair", pair_path}, {"max_lag", std::to_string(max_lag)}});
        } else if (app.got_subcommand(cmd_ingest)) {
            const std::vector<IntradayBar> bars = read_intraday_csv(intraday_path);
            const std::vector<DailyRecord> records =
                build_daily_records(bars, ingest_options, &std::cerr);
            emit(global, render_daily_records(records, global.output_format()), "ingest",
                 {{"intraday", intraday_path},
                  {"grid_minutes", std::to_string(ingest_options.grid_minutes)},
                  {"min_bars", std::to_string(ingest_options.min_bars)},
                  {"include_overnight", ingest_options.include_overnight ? "true" : "false"},
                  {"detrend_order", std::to_string(ingest_options.detrend_order)}});
        } else if (app.got_subcommand(cmd_mc)) {
            ExperimentSpec spec;
            spec.process = make_process(process_name, theta, frac_d, coupling);
            spec.rho_values = rho_list;
            spec.lengths = t_list;
            spec.q_values = q_list;
            spec.alphas = alpha_list;
            spec.replications = mc_replications;
            spec.bootstrap_replicates = replicates;
            spec.hurst_mode = parse_hurst_mode(mc_hurst == "user" ? "user" : mc_hurst);
            spec.block_size = zeta;
            spec.base_seed = global.seed;
            spec.threads = global.threads;
            const McTable table = run_size_power(spec);
            emit(global, render_mc_table(table, global.output_format()), "mc-size-power",
                 {{"process", process_name},
                  {"param", dtos(spec.process.param)},
                  {"R", std::to_string(mc_replications)},
                  {"B", std::to_string(replicates)},
                  {"hurst", mc_hurst},
                  {"wall_seconds", dtos(table.wall_seconds)}});
        } else if (app.got_subcommand(cmd_fig)) {
            SweepConfig cfg;
            cfg.kind = kind_name == "ar1" ? ProcessKind::Ar1 : ProcessKind::Arfima;
            cfg.param_grid = param_grid.empty() ? default_sweep_param_grid(cfg.kind) : param_grid;
            cfg.rho_grid = rho_grid.empty() ? default_sweep_rho_grid() : rho_grid;
            cfg.length = sweep_length;
            cfg.q = sweep_q;
            cfg.replications = sweep_replications;
            cfg.seed = global.seed;
            cfg.estimate_hurst_dfa = sweep_dfa;
            cfg.threads = global.threads;
            const SweepCurve curve = run_statistic_sweep(cfg);
            emit(global, render_sweep_curve(curve, global.output_format()), "mc-fig1",
                 {{"kind", kind_name},
                  {"T", std::to_string(sweep_length)},
                  {"q", std::to_string(sweep_q)},
                  {"R", std::to_string(sweep_replications)},
                  {"estimate_hurst", sweep_dfa ? "true" : "false"}});
        } else if (app.got_subcommand(cmd_scaling)) {
            ScalingConfig cfg;
            cfg.process = make_process(process_name, theta, frac_d, coupling);
            cfg.rho = scaling_rho;
            cfg.n_grid = n_grid;
            cfg.replications = scaling_replications;
            cfg.seed = global.seed;
            cfg.threads = global.threads;
            cfg.arfima_truncation = scaling_trunc;
            const ScalingResult result = run_scaling_check(cfg);
            if (result.slope_valid)
                std::fprintf(stderr, "log-log slope: %s\n", dtos(result.slope).c_str());
            emit(global, render_scaling(result, global.output_format()), "mc-scaling",
                 {{"process", process_name},
                  {"param", dtos(cfg.process.param)},
                  {"rho", dtos(scaling_rho)},
                  {"R", std::to_string(scaling_replications)},
                  {"slope", result.slope_valid ? dtos(result.slope) : "undefined"}});
        }
    } catch (const InputError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const DegenerateStatistic& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const BootstrapInstability& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
