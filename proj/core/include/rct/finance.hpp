#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "rct/series.hpp"

namespace rct {

/// One intraday observation. Timestamps are seconds since midnight and must be
/// strictly increasing within a day; prices must be positive.
struct IntradayBar {
    std::string day;
    int second_of_day = 0;
    double price = 0.0;
    std::optional<double> volume;
};

/// Daily aggregates derived from intraday bars. Optional fields stay empty
/// where undefined (first-day return, zero realized variance, missing volume).
struct DailyRecord {
    std::string day;
    double realized_variance = 0.0;
    std::optional<double> log_volatility;        // log sqrt(RV), RV > 0 only
    std::optional<double> log_return;            // close-to-close
    std::optional<double> log_volume;            // log of summed bar volume
    std::optional<double> detrended_log_volume;  // residual of the polynomial fit
};

struct IngestOptions {
    int grid_minutes = 5;
    int min_bars = 20;               // days with fewer raw bars are dropped
    bool include_overnight = false;  // add the squared open/prev-close return to RV
    int detrend_order = 2;           // polynomial order for the volume trend
};

/// Sum of squared log returns over consecutive prices of one day.
/// Needs at least two prices.
double realized_variance(std::span<const double> prices);

/// Last-observation-carried-forward resampling of one day's bars onto a fixed
/// minute grid anchored at the first bar.
std::vector<double> resample_locf(const std::vector<IntradayBar>& day_bars, int grid_minutes);

/// Full ingestion pipeline: group bars by day, resample, compute realized
/// variance / log volatility / close-to-close returns / volume columns, and
/// detrend log volume when enough volume data is present. Dropped days are
/// reported on `warnings` (when given), never imputed.
std::vector<DailyRecord> build_daily_records(const std::vector<IntradayBar>& bars,
                                             const IngestOptions& options,
                                             std::ostream* warnings = nullptr);

/// Subtract a least-squares polynomial of the given order in the time index.
/// The fit includes an intercept, so the output has mean zero. Errors when
/// T <= order + 1.
Series detrend_log_volume(const Series& log_volume, int order);

}  // namespace rct
