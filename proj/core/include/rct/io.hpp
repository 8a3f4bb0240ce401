#pragma once

#include <string>
#include <utility>
#include <vector>

#include "rct/bootstrap.hpp"
#include "rct/finance.hpp"
#include "rct/montecarlo.hpp"
#include "rct/series.hpp"

namespace rct {

enum class OutputFormat { Csv, Json };

/// Shortest decimal string that parses back to exactly the same double.
std::string format_double(double v);

/// Paired-series file: header `x,y` or `date,x,y`, dot decimal separator.
struct PairData {
    BivariatePair pair;
    std::vector<std::string> dates;  // empty without a date column
};

PairData read_pair_csv(const std::string& path);

/// Intraday file: header `date,time,price[,volume]`, time as HH:MM or HH:MM:SS.
std::vector<IntradayBar> read_intraday_csv(const std::string& path);

std::string render_daily_records_csv(const std::vector<DailyRecord>& records);
std::vector<DailyRecord> read_daily_records_csv(const std::string& path);

/// Lag / correlation / covariance rows plus log-log-ready columns for the
/// positive-lag branch (log10 of lag and of |rho|, blank elsewhere).
std::string render_ccf_csv(const CcfEstimate& est);
CcfEstimate read_ccf_csv(const std::string& path);

std::string render_ccf(const CcfEstimate& est, OutputFormat format);
std::string render_daily_records(const std::vector<DailyRecord>& records, OutputFormat format);

std::string render_rct_result(const RctResult& result, OutputFormat format);
std::string render_q_sweep(const std::vector<QSweepRow>& rows, OutputFormat format);
std::string render_mc_table(const McTable& table, OutputFormat format);
std::string render_sweep_curve(const SweepCurve& curve, OutputFormat format);
std::string render_scaling(const ScalingResult& result, OutputFormat format);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

/// Run manifest written next to result files: command, seed, versioned tool
/// id, the resolved option set and the produced outputs.
struct ManifestInfo {
    std::string command;
    Seed seed = 0;
    std::vector<std::pair<std::string, std::string>> options;
    std::vector<std::string> outputs;
};

std::string render_manifest(const ManifestInfo& info);

const char* hurst_mode_name(HurstMode mode);

}  // namespace rct
