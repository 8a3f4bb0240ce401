#pragma once

#include <span>
#include <string>
#include <vector>

namespace rct {

/// One real-valued, equally spaced series. Values are validated at
/// construction: non-finite entries are rejected, never silently dropped.
class Series {
public:
    Series() = default;
    explicit Series(std::vector<double> values, std::string label = {});
    Series(std::vector<double> values, std::vector<std::string> index, std::string label = {});

    const std::vector<double>& values() const noexcept { return values_; }
    std::span<const double> span() const noexcept { return values_; }
    double operator[](std::size_t i) const { return values_[i]; }
    int length() const noexcept { return static_cast<int>(values_.size()); }
    bool empty() const noexcept { return values_.empty(); }

    const std::string& label() const noexcept { return label_; }
    const std::vector<std::string>& index() const noexcept { return index_; }
    bool has_index() const noexcept { return !index_.empty(); }

private:
    std::vector<double> values_;
    std::vector<std::string> index_;
    std::string label_;
};

/// Two aligned series of identical length; the unit every test operates on.
class BivariatePair {
public:
    BivariatePair() = default;
    BivariatePair(Series x, Series y);

    const Series& x() const noexcept { return x_; }
    const Series& y() const noexcept { return y_; }
    int length() const noexcept { return x_.length(); }

private:
    Series x_;
    Series y_;
};

/// Cross-correlation and cross-covariance over a symmetric lag window -K..K.
struct CcfEstimate {
    int max_lag = 0;
    std::vector<double> rho;    // size 2*max_lag + 1, index k + max_lag
    std::vector<double> gamma;  // same layout

    double rho_at(int k) const { return rho.at(static_cast<std::size_t>(k + max_lag)); }
    double gamma_at(int k) const { return gamma.at(static_cast<std::size_t>(k + max_lag)); }
};

double mean(std::span<const double> v);

/// Second central moment with divisor n (not n-1); needs length >= 2.
double variance(std::span<const double> v);
double stddev(std::span<const double> v);

/// Subtract the sample mean. Errors on empty input.
Series demean(const Series& s);

/// Cumulative sums: out[t] = sum of in[0..t].
Series partial_sum(const Series& s);

/// Lagged cross-covariance with divisor T and full-sample means:
///   gamma_xy(k) = (1/T) * sum_t (x_t - xbar)(y_{t+k} - ybar)
/// summed over the overlap. Positive k means x leads y: if y reproduces x one
/// step later, the peak sits at k = +1. Requires |k| <= T-2.
double cross_covariance(const BivariatePair& p, int lag);

/// Cross-correlation function rho(k) = gamma_xy(k) / (sd_x * sd_y) for
/// k = -max_lag..max_lag. The divisor-T convention keeps |rho| <= 1.
CcfEstimate ccf(const BivariatePair& p, int max_lag);

}  // namespace rct
