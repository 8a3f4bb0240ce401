#include "rct/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "rct/errors.hpp"
#include "rct/version.hpp"

namespace rct {

namespace {

using nlohmann::json;

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(trim(field));
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

double parse_double(const std::string& s, const std::string& context) {
    double v = 0.0;
    const char* begin = s.data();
    const char* end = begin + s.size();
    const auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc{} || ptr != end)
        throw InputError("cannot parse number '" + s + "' in " + context);
    return v;
}

int parse_time_seconds(const std::string& s, const std::string& context) {
    int h = 0, m = 0, sec = 0;
    const int n = std::sscanf(s.c_str(), "%d:%d:%d", &h, &m, &sec);
    if (n < 2) throw InputError("cannot parse time '" + s + "' in " + context);
    if (h < 0 || h > 23 || m < 0 || m > 59 || sec < 0 || sec > 59)
        throw InputError("time out of range '" + s + "' in " + context);
    return h * 3600 + m * 60 + sec;
}

std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open file: " + path);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
    }
    return lines;
}

std::string opt_field(const std::optional<double>& v) {
    return v ? format_double(*v) : std::string{};
}

std::optional<double> parse_opt(const std::string& s, const std::string& context) {
    if (s.empty()) return std::nullopt;
    return parse_double(s, context);
}

json stat_to_json(const RctStatistic& stat) {
    return json{{"m", stat.m},
                {"q", stat.q},
                {"hx", stat.hx},
                {"hy", stat.hy},
                {"cov_partial_sums", stat.cov_partial_sums},
                {"s_xy_q", stat.s_xy_q},
                {"T", stat.length}};
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

const char* hurst_mode_name(HurstMode mode) {
    switch (mode) {
        case HurstMode::ReestimatePerResample: return "estimate";
        case HurstMode::FixedFromOriginal: return "fixed";
        case HurstMode::UserSupplied: return "user";
    }
    return "unknown";
}

PairData read_pair_csv(const std::string& path) {
    const std::vector<std::string> lines = read_lines(path);
    if (lines.empty()) throw InputError("empty input");
    const std::vector<std::string> header = split_csv_line(lower(lines[0]));

    int date_col = -1, x_col = -1, y_col = -1;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == "date") date_col = static_cast<int>(i);
        else if (header[i] == "x") x_col = static_cast<int>(i);
        else if (header[i] == "y") y_col = static_cast<int>(i);
    }
    if (x_col < 0 || y_col < 0)
        throw InputError("pair file must have header 'x,y' or 'date,x,y': " + path);

    std::vector<double> x, y;
    std::vector<std::string> dates;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (trim(lines[i]).empty()) continue;
        const std::vector<std::string> f = split_csv_line(lines[i]);
        const std::string where = path + ":" + std::to_string(i + 1);
        if (static_cast<int>(f.size()) <= std::max(x_col, y_col))
            throw InputError("short row in " + where);
        x.push_back(parse_double(f[static_cast<std::size_t>(x_col)], where));
        y.push_back(parse_double(f[static_cast<std::size_t>(y_col)], where));
        if (date_col >= 0) dates.push_back(f[static_cast<std::size_t>(date_col)]);
    }
    if (x.size() < 2) throw InputError("pair file has fewer than two rows: " + path);

    PairData out;
    try {
        out.pair = BivariatePair(Series(std::move(x), "x"), Series(std::move(y), "y"));
    } catch (const std::invalid_argument& e) {
        throw InputError(std::string(e.what()) + ": " + path);
    }
    out.dates = std::move(dates);
    return out;
}

std::vector<IntradayBar> read_intraday_csv(const std::string& path) {
    const std::vector<std::string> lines = read_lines(path);
    if (lines.empty()) throw InputError("empty input");
    const std::vector<std::string> header = split_csv_line(lower(lines[0]));
    if (header.size() < 3 || header[0] != "date" || header[1] != "time" || header[2] != "price")
        throw InputError("intraday file must have header 'date,time,price[,volume]': " + path);
    const bool has_volume = header.size() >= 4 && header[3] == "volume";

    std::vector<IntradayBar> bars;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (trim(lines[i]).empty()) continue;
        const std::vector<std::string> f = split_csv_line(lines[i]);
        const std::string where = path + ":" + std::to_string(i + 1);
        if (f.size() < 3) throw InputError("short row in " + where);
        IntradayBar bar;
        bar.day = f[0];
        bar.second_of_day = parse_time_seconds(f[1], where);
        bar.price = parse_double(f[2], where);
        if (bar.price <= 0.0) throw InputError("nonpositive price in " + where);
        if (has_volume && f.size() >= 4 && !f[3].empty()) bar.volume = parse_double(f[3], where);
        bars.push_back(std::move(bar));
    }
    return bars;
}

std::string render_daily_records_csv(const std::vector<DailyRecord>& records) {
    std::string out =
        "date,realized_variance,log_volatility,log_return,log_volume,detrended_log_volume\n";
    for (const DailyRecord& r : records) {
        out += r.day;
        out += ',';
        out += format_double(r.realized_variance);
        out += ',';
        out += opt_field(r.log_volatility);
        out += ',';
        out += opt_field(r.log_return);
        out += ',';
        out += opt_field(r.log_volume);
        out += ',';
        out += opt_field(r.detrended_log_volume);
        out += '\n';
    }
    return out;
}

std::vector<DailyRecord> read_daily_records_csv(const std::string& path) {
    const std::vector<std::string> lines = read_lines(path);
    if (lines.empty()) throw InputError("empty input");
    std::vector<DailyRecord> records;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (trim(lines[i]).empty()) continue;
        const std::vector<std::string> f = split_csv_line(lines[i]);
        const std::string where = path + ":" + std::to_string(i + 1);
        if (f.size() < 6) throw InputError("short row in " + where);
        DailyRecord r;
        r.day = f[0];
        r.realized_variance = parse_double(f[1], where);
        r.log_volatility = parse_opt(f[2], where);
        r.log_return = parse_opt(f[3], where);
        r.log_volume = parse_opt(f[4], where);
        r.detrended_log_volume = parse_opt(f[5], where);
        records.push_back(std::move(r));
    }
    return records;
}

std::string render_ccf_csv(const CcfEstimate& est) {
    std::string out = "lag,rho,gamma,log10_lag,log10_abs_rho\n";
    for (int k = -est.max_lag; k <= est.max_lag; ++k) {
        const double rho = est.rho_at(k);
        out += std::to_string(k);
        out += ',';
        out += format_double(rho);
        out += ',';
        out += format_double(est.gamma_at(k));
        if (k > 0 && rho != 0.0) {
            out += ',';
            out += format_double(std::log10(static_cast<double>(k)));
            out += ',';
            out += format_double(std::log10(std::abs(rho)));
        } else {
            out += ",,";
        }
        out += '\n';
    }
    return out;
}

CcfEstimate read_ccf_csv(const std::string& path) {
    const std::vector<std::string> lines = read_lines(path);
    if (lines.size() < 2) throw InputError("empty input");
    std::vector<std::pair<int, std::pair<double, double>>> rows;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (trim(lines[i]).empty()) continue;
        const std::vector<std::string> f = split_csv_line(lines[i]);
        const std::string where = path + ":" + std::to_string(i + 1);
        if (f.size() < 3) throw InputError("short row in " + where);
        const int lag = static_cast<int>(parse_double(f[0], where));
        rows.emplace_back(lag, std::make_pair(parse_double(f[1], where), parse_double(f[2], where)));
    }
    if (rows.empty()) throw InputError("empty ccf file: " + path);
    const int max_lag = (static_cast<int>(rows.size()) - 1) / 2;
    CcfEstimate est;
    est.max_lag = max_lag;
    est.rho.resize(rows.size());
    est.gamma.resize(rows.size());
    for (const auto& [lag, rg] : rows) {
        if (lag < -max_lag || lag > max_lag) throw InputError("asymmetric lag window in " + path);
        est.rho[static_cast<std::size_t>(lag + max_lag)] = rg.first;
        est.gamma[static_cast<std::size_t>(lag + max_lag)] = rg.second;
    }
    return est;
}

std::string render_ccf(const CcfEstimate& est, OutputFormat format) {
    if (format == OutputFormat::Csv) return render_ccf_csv(est);
    json arr = json::array();
    for (int k = -est.max_lag; k <= est.max_lag; ++k)
        arr.push_back(json{{"lag", k}, {"rho", est.rho_at(k)}, {"gamma", est.gamma_at(k)}});
    return arr.dump(2) + "\n";
}

std::string render_daily_records(const std::vector<DailyRecord>& records, OutputFormat format) {
    if (format == OutputFormat::Csv) return render_daily_records_csv(records);
    json arr = json::array();
    for (const DailyRecord& r : records) {
        json j{{"date", r.day}, {"realized_variance", r.realized_variance}};
        if (r.log_volatility) j["log_volatility"] = *r.log_volatility;
        if (r.log_return) j["log_return"] = *r.log_return;
        if (r.log_volume) j["log_volume"] = *r.log_volume;
        if (r.detrended_log_volume) j["detrended_log_volume"] = *r.detrended_log_volume;
        arr.push_back(std::move(j));
    }
    return arr.dump(2) + "\n";
}

std::string render_rct_result(const RctResult& result, OutputFormat format) {
    if (format == OutputFormat::Json) {
        json j = stat_to_json(result.observed);
        j["ci_low"] = result.ci_low;
        j["ci_high"] = result.ci_high;
        j["p_value"] = result.p_value;
        j["reject"] = result.reject;
        j["block_size"] = result.block_size;
        j["bootstrap_replicates"] = result.boot_stats.size();
        j["failed_resamples"] = result.failed_resamples;
        j["hurst_mode"] = hurst_mode_name(result.hurst_mode);
        return j.dump(2) + "\n";
    }
    std::string out =
        "q,M,Hx,Hy,cov_partial_sums,s_xy_q,T,block_size,B,ci_low,ci_high,p_value,reject\n";
    const RctStatistic& s = result.observed;
    out += std::to_string(s.q) + ',' + format_double(s.m) + ',' + format_double(s.hx) + ',' +
           format_double(s.hy) + ',' + format_double(s.cov_partial_sums) + ',' +
           format_double(s.s_xy_q) + ',' + std::to_string(s.length) + ',' +
           std::to_string(result.block_size) + ',' + std::to_string(result.boot_stats.size()) +
           ',' + format_double(result.ci_low) + ',' + format_double(result.ci_high) + ',' +
           format_double(result.p_value) + ',' + (result.reject ? "true" : "false") + '\n';
    return out;
}

std::string render_q_sweep(const std::vector<QSweepRow>& rows, OutputFormat format) {
    if (format == OutputFormat::Json) {
        json arr = json::array();
        for (const QSweepRow& row : rows) {
            json j = stat_to_json(row.stat);
            j["ci_low"] = row.ci_low;
            j["ci_high"] = row.ci_high;
            j["p_value"] = row.p_value;
            j["reject"] = row.reject;
            arr.push_back(std::move(j));
        }
        return arr.dump(2) + "\n";
    }
    std::string out = "q,M,Hx,Hy,cov_partial_sums,s_xy_q,T,ci_low,ci_high,p_value,reject\n";
    for (const QSweepRow& row : rows) {
        const RctStatistic& s = row.stat;
        out += std::to_string(s.q) + ',' + format_double(s.m) + ',' + format_double(s.hx) + ',' +
               format_double(s.hy) + ',' + format_double(s.cov_partial_sums) + ',' +
               format_double(s.s_xy_q) + ',' + std::to_string(s.length) + ',' +
               format_double(row.ci_low) + ',' + format_double(row.ci_high) + ',' +
               format_double(row.p_value) + ',' + (row.reject ? "true" : "false") + '\n';
    }
    return out;
}

std::string render_mc_table(const McTable& table, OutputFormat format) {
    if (format == OutputFormat::Json) {
        json arr = json::array();
        for (const McCell& c : table.cells)
            arr.push_back(json{{"T", c.length},
                               {"q", c.q},
                               {"alpha", c.alpha},
                               {"rho", c.rho},
                               {"rate", c.rate()},
                               {"se", c.se()},
                               {"R", c.replications},
                               {"seed", table.spec.base_seed}});
        return arr.dump(2) + "\n";
    }
    std::string out = "T,q,alpha,rho,rate,se,R,seed\n";
    for (const McCell& c : table.cells) {
        out += std::to_string(c.length) + ',' + std::to_string(c.q) + ',' +
               format_double(c.alpha) + ',' + format_double(c.rho) + ',' +
               format_double(c.rate()) + ',' + format_double(c.se()) + ',' +
               std::to_string(c.replications) + ',' + std::to_string(table.spec.base_seed) + '\n';
    }
    return out;
}

std::string render_sweep_curve(const SweepCurve& curve, OutputFormat format) {
    const char* param_name = curve.config.kind == ProcessKind::Ar1 ? "theta" : "d";
    if (format == OutputFormat::Json) {
        json arr = json::array();
        for (const SweepPoint& p : curve.points)
            arr.push_back(json{{param_name, p.param},
                               {"rho", p.rho},
                               {"mean_m", p.mean_m},
                               {"sd_m", p.sd_m}});
        return arr.dump(2) + "\n";
    }
    std::string out = std::string(param_name) + ",rho,mean_m,sd_m\n";
    for (const SweepPoint& p : curve.points)
        out += format_double(p.param) + ',' + format_double(p.rho) + ',' +
               format_double(p.mean_m) + ',' + format_double(p.sd_m) + '\n';
    return out;
}

std::string render_scaling(const ScalingResult& result, OutputFormat format) {
    if (format == OutputFormat::Json) {
        json arr = json::array();
        for (const ScalingPoint& p : result.points)
            arr.push_back(json{{"n", p.n}, {"cov", p.cov}, {"se", p.se}, {"t", p.tstat}});
        json j{{"points", std::move(arr)}, {"slope_valid", result.slope_valid}};
        if (result.slope_valid) {
            j["slope"] = result.slope;
            j["intercept"] = result.intercept;
        }
        return j.dump(2) + "\n";
    }
    std::string out = "n,cov,se,t\n";
    for (const ScalingPoint& p : result.points)
        out += std::to_string(p.n) + ',' + format_double(p.cov) + ',' + format_double(p.se) +
               ',' + format_double(p.tstat) + '\n';
    return out;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot open file for writing: " + path);
    out << content;
    if (!out) throw InputError("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string render_manifest(const ManifestInfo& info) {
    json options = json::object();
    for (const auto& [key, value] : info.options) options[key] = value;
    const json j{{"tool", kProjectName},
                 {"version", kVersion},
                 {"command", info.command},
                 {"seed", info.seed},
                 {"options", std::move(options)},
                 {"outputs", info.outputs}};
    return j.dump(2) + "\n";
}

}  // namespace rct
