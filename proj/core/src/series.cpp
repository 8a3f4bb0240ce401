#include "rct/series.hpp"

#include <cmath>
#include <stdexcept>

namespace rct {

namespace {

void require_finite(const std::vector<double>& values) {
    for (double v : values) {
        if (!std::isfinite(v)) throw std::invalid_argument("series contains non-finite value");
    }
}

}  // namespace

Series::Series(std::vector<double> values, std::string label)
    : values_(std::move(values)), label_(std::move(label)) {
    require_finite(values_);
}

Series::Series(std::vector<double> values, std::vector<std::string> index, std::string label)
    : values_(std::move(values)), index_(std::move(index)), label_(std::move(label)) {
    require_finite(values_);
    if (!index_.empty() && index_.size() != values_.size())
        throw std::invalid_argument("index length does not match series length");
}

BivariatePair::BivariatePair(Series x, Series y) : x_(std::move(x)), y_(std::move(y)) {
    if (x_.length() != y_.length())
        throw std::invalid_argument("paired series must have identical length");
}

double mean(std::span<const double> v) {
    if (v.empty()) throw std::invalid_argument("empty input");
    double acc = 0.0;
    for (double x : v) acc += x;
    return acc / static_cast<double>(v.size());
}

double variance(std::span<const double> v) {
    if (v.size() < 2) throw std::invalid_argument("series too short for moment estimation");
    const double m = mean(v);
    double acc = 0.0;
    for (double x : v) {
        const double d = x - m;
        acc += d * d;
    }
    return acc / static_cast<double>(v.size());
}

double stddev(std::span<const double> v) { return std::sqrt(variance(v)); }

Series demean(const Series& s) {
    if (s.empty()) throw std::invalid_argument("empty input");
    const double m = mean(s.span());
    std::vector<double> out(s.values());
    for (double& x : out) x -= m;
    return Series(std::move(out), s.index(), s.label());
}

Series partial_sum(const Series& s) {
    std::vector<double> out;
    out.reserve(s.values().size());
    double acc = 0.0;
    for (double x : s.values()) {
        acc += x;
        out.push_back(acc);
    }
    return Series(std::move(out), s.index(), s.label());
}

double cross_covariance(const BivariatePair& p, int lag) {
    const int n = p.length();
    if (n < 2) throw std::invalid_argument("series too short for moment estimation");
    if (std::abs(lag) > n - 2) throw std::invalid_argument("lag exceeds sample");

    const double xbar = mean(p.x().span());
    const double ybar = mean(p.y().span());
    const std::vector<double>& x = p.x().values();
    const std::vector<double>& y = p.y().values();

    // Overlap for lag k pairs x[t] with y[t+k]; the same products show up, in
    // the same order, for the swapped pair at -k, so swap symmetry is exact.
    double acc = 0.0;
    if (lag >= 0) {
        for (int t = 0; t + lag < n; ++t) acc += (x[t] - xbar) * (y[t + lag] - ybar);
    } else {
        for (int t = -lag; t < n; ++t) acc += (x[t] - xbar) * (y[t + lag] - ybar);
    }
    return acc / static_cast<double>(n);
}

CcfEstimate ccf(const BivariatePair& p, int max_lag) {
    const int n = p.length();
    if (max_lag < 0) throw std::invalid_argument("max_lag must be nonnegative");
    if (max_lag > n - 2) throw std::invalid_argument("lag exceeds sample");

    const double sx = stddev(p.x().span());
    const double sy = stddev(p.y().span());
    if (sx == 0.0 || sy == 0.0) throw std::invalid_argument("constant series has no correlation");

    CcfEstimate est;
    est.max_lag = max_lag;
    est.rho.resize(2 * static_cast<std::size_t>(max_lag) + 1);
    est.gamma.resize(est.rho.size());
    for (int k = -max_lag; k <= max_lag; ++k) {
        const double g = cross_covariance(p, k);
        est.gamma[static_cast<std::size_t>(k + max_lag)] = g;
        est.rho[static_cast<std::size_t>(k + max_lag)] = g / (sx * sy);
    }
    return est;
}

}  // namespace rct
