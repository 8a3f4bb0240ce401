#pragma once

#include <stdexcept>

namespace rct {

/// Malformed or unusable user input (files, CLI values). CLI maps this to exit code 2.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A statistic cannot be formed because its normalizer is numerically zero.
/// CLI maps this to exit code 3.
struct DegenerateStatistic : std::domain_error {
    using std::domain_error::domain_error;
};

/// Too many bootstrap resamples failed to produce a statistic.
/// CLI maps this to exit code 3.
struct BootstrapInstability : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace rct
