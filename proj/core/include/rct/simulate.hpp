#pragma once

#include <vector>

#include "rct/random.hpp"
#include "rct/series.hpp"

namespace rct {

/// How the second series of the short-memory pair is driven. AsPrinted couples
/// y to the lagged x (y_t = theta2 * x_{t-1} + nu_t); TrueAr1 makes y its own
/// autoregression (y_t = theta2 * y_{t-1} + nu_t). Both are short-range
/// cross-correlated, so null rejection rates do not depend on the choice.
enum class CouplingMode { AsPrinted, TrueAr1 };

struct Ar1PairSpec {
    double theta1 = 0.0;
    double theta2 = 0.0;
    double rho = 0.0;  // innovation correlation
    int length = 0;
    int burnin = 1000;
    CouplingMode coupling = CouplingMode::TrueAr1;

    void validate() const;
};

struct ArfimaPairSpec {
    double d1 = 0.0;
    double d2 = 0.0;
    double rho = 0.0;  // innovation correlation
    int length = 0;
    int truncation = 0;  // 0 -> max(length, 10000)

    int effective_truncation() const;
    void validate() const;
};

/// Pair of standard normal streams with contemporaneous correlation rho:
/// nu_t = rho * eps_t + sqrt(1 - rho^2) * eta_t. rho = 1 makes the streams
/// identical elementwise. Deterministic per seed.
BivariatePair gaussian_pair(int length, double rho, Seed seed);

/// Coupled AR(1)-type pair; burn-in samples are generated and discarded.
BivariatePair simulate_ar1_pair(const Ar1PairSpec& spec, Seed seed);

/// MA coefficients of fractionally integrated noise:
///   a_0 = 1, a_n = a_{n-1} * (n - 1 + d) / n
/// (the stable form of the gamma-ratio expression). Requires 0 <= d < 0.5;
/// d = 0 degenerates to white noise (a_n = 0 for n >= 1).
std::vector<double> arfima_ma_coefficients(double d, int n_max);

/// Fractionally integrated noise pair via the truncated MA(infinity)
/// representation over a shared innovation stream of length T + truncation.
/// H = d + 0.5 for each marginal. Deterministic per seed.
BivariatePair simulate_arfima_pair(const ArfimaPairSpec& spec, Seed seed);

}  // namespace rct
