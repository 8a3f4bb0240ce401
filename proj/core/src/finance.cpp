#include "rct/finance.hpp"

#include <cmath>
#include <stdexcept>

namespace rct {

namespace {

// Least-squares polynomial fit over a normalized index in [-1, 1]; returns
// fitted values. Plain normal equations with partial pivoting are enough for
// the low orders used here.
std::vector<double> polynomial_fit(std::span<const double> y, int order) {
    const int n = static_cast<int>(y.size());
    const int m = order + 1;
    auto tnorm = [&](int t) {
        return n == 1 ? 0.0 : 2.0 * static_cast<double>(t) / static_cast<double>(n - 1) - 1.0;
    };

    std::vector<double> a(static_cast<std::size_t>(m) * m, 0.0);
    std::vector<double> b(static_cast<std::size_t>(m), 0.0);
    std::vector<double> powers(static_cast<std::size_t>(m));
    for (int t = 0; t < n; ++t) {
        powers[0] = 1.0;
        const double x = tnorm(t);
        for (int j = 1; j < m; ++j) powers[static_cast<std::size_t>(j)] = powers[static_cast<std::size_t>(j - 1)] * x;
        for (int i = 0; i < m; ++i) {
            b[static_cast<std::size_t>(i)] += powers[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(t)];
            for (int j = 0; j < m; ++j)
                a[static_cast<std::size_t>(i) * m + j] += powers[static_cast<std::size_t>(i)] * powers[static_cast<std::size_t>(j)];
        }
    }

    for (int col = 0; col < m; ++col) {
        int pivot = col;
        for (int r = col + 1; r < m; ++r)
            if (std::abs(a[static_cast<std::size_t>(r) * m + col]) >
                std::abs(a[static_cast<std::size_t>(pivot) * m + col]))
                pivot = r;
        if (a[static_cast<std::size_t>(pivot) * m + col] == 0.0)
            throw std::invalid_argument("insufficient data for polynomial detrend");
        if (pivot != col) {
            for (int j = 0; j < m; ++j)
                std::swap(a[static_cast<std::size_t>(pivot) * m + j], a[static_cast<std::size_t>(col) * m + j]);
            std::swap(b[static_cast<std::size_t>(pivot)], b[static_cast<std::size_t>(col)]);
        }
        for (int r = col + 1; r < m; ++r) {
            const double f = a[static_cast<std::size_t>(r) * m + col] / a[static_cast<std::size_t>(col) * m + col];
            for (int j = col; j < m; ++j)
                a[static_cast<std::size_t>(r) * m + j] -= f * a[static_cast<std::size_t>(col) * m + j];
            b[static_cast<std::size_t>(r)] -= f * b[static_cast<std::size_t>(col)];
        }
    }
    std::vector<double> coef(static_cast<std::size_t>(m));
    for (int r = m - 1; r >= 0; --r) {
        double acc = b[static_cast<std::size_t>(r)];
        for (int j = r + 1; j < m; ++j)
            acc -= a[static_cast<std::size_t>(r) * m + j] * coef[static_cast<std::size_t>(j)];
        coef[static_cast<std::size_t>(r)] = acc / a[static_cast<std::size_t>(r) * m + r];
    }

    std::vector<double> fitted(static_cast<std::size_t>(n));
    for (int t = 0; t < n; ++t) {
        const double x = tnorm(t);
        double acc = 0.0;
        for (int j = m - 1; j >= 0; --j) acc = acc * x + coef[static_cast<std::size_t>(j)];
        fitted[static_cast<std::size_t>(t)] = acc;
    }
    return fitted;
}

}  // namespace

double realized_variance(std::span<const double> prices) {
    if (prices.size() < 2) throw std::invalid_argument("need at least two prices");
    double rv = 0.0;
    for (std::size_t i = 1; i < prices.size(); ++i) {
        const double r = std::log(prices[i] / prices[i - 1]);
        rv += r * r;
    }
    return rv;
}

std::vector<double> resample_locf(const std::vector<IntradayBar>& day_bars, int grid_minutes) {
    if (grid_minutes < 1) throw std::invalid_argument("grid step must be at least one minute");
    if (day_bars.empty()) return {};
    const int step = grid_minutes * 60;
    const int start = day_bars.front().second_of_day;
    const int stop = day_bars.back().second_of_day;

    std::vector<double> prices;
    std::size_t cursor = 0;
    for (int t = start; t <= stop; t += step) {
        while (cursor + 1 < day_bars.size() && day_bars[cursor + 1].second_of_day <= t) ++cursor;
        prices.push_back(day_bars[cursor].price);
    }
    return prices;
}

std::vector<DailyRecord> build_daily_records(const std::vector<IntradayBar>& bars,
                                             const IngestOptions& options,
                                             std::ostream* warnings) {
    if (options.min_bars < 2) throw std::invalid_argument("min_bars must be at least 2");

    // Group by day, preserving file order.
    std::vector<std::pair<std::string, std::vector<IntradayBar>>> days;
    for (const IntradayBar& bar : bars) {
        if (bar.price <= 0.0) throw std::invalid_argument("prices must be positive");
        if (days.empty() || days.back().first != bar.day)
            days.emplace_back(bar.day, std::vector<IntradayBar>{});
        auto& group = days.back().second;
        if (!group.empty() && bar.second_of_day <= group.back().second_of_day)
            throw std::invalid_argument("timestamps must be strictly increasing within a day");
        group.push_back(bar);
    }

    std::vector<DailyRecord> records;
    std::optional<double> prev_close;
    for (auto& [day, group] : days) {
        if (static_cast<int>(group.size()) < options.min_bars) {
            if (warnings)
                *warnings << "dropping day " << day << ": only " << group.size() << " bars\n";
            continue;
        }
        const std::vector<double> prices = resample_locf(group, options.grid_minutes);
        if (prices.size() < 2) {
            if (warnings) *warnings << "dropping day " << day << ": too few grid points\n";
            continue;
        }

        DailyRecord rec;
        rec.day = day;
        rec.realized_variance = realized_variance(prices);
        if (options.include_overnight && prev_close) {
            const double r = std::log(prices.front() / *prev_close);
            rec.realized_variance += r * r;
        }
        if (rec.realized_variance > 0.0) rec.log_volatility = 0.5 * std::log(rec.realized_variance);
        if (prev_close) rec.log_return = std::log(prices.back() / *prev_close);
        prev_close = prices.back();

        double volume = 0.0;
        bool any_volume = false;
        for (const IntradayBar& bar : group) {
            if (bar.volume) {
                volume += *bar.volume;
                any_volume = true;
            }
        }
        if (any_volume && volume > 0.0) rec.log_volume = std::log(volume);
        records.push_back(std::move(rec));
    }

    // Detrend the volume column when it is populated densely enough.
    std::vector<double> lv;
    std::vector<std::size_t> where;
    for (std::size_t i = 0; i < records.size(); ++i) {
        if (records[i].log_volume) {
            lv.push_back(*records[i].log_volume);
            where.push_back(i);
        }
    }
    if (!lv.empty()) {
        if (static_cast<int>(lv.size()) > options.detrend_order + 1) {
            const Series resid = detrend_log_volume(Series(lv), options.detrend_order);
            for (std::size_t i = 0; i < where.size(); ++i)
                records[where[i]].detrended_log_volume = resid[i];
        } else if (warnings) {
            *warnings << "volume column too short to detrend (" << lv.size() << " values)\n";
        }
    }
    return records;
}

Series detrend_log_volume(const Series& log_volume, int order) {
    if (order < 0) throw std::invalid_argument("detrend order must be nonnegative");
    if (log_volume.length() <= order + 1)
        throw std::invalid_argument("insufficient data for polynomial detrend");
    const std::vector<double> fitted = polynomial_fit(log_volume.span(), order);
    std::vector<double> out(log_volume.values());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] -= fitted[i];
    return Series(std::move(out), log_volume.index(), log_volume.label());
}

}  // namespace rct
