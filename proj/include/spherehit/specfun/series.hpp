// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <limits>

namespace spherehit::specfun {

/// Truncation control shared by every series in the library.  Summation
/// stops at the first index whose remainder bound drops below abs_tol.
struct SeriesControl {
    int n_max = 4000;
    double abs_tol = 1e-12;
};

/// A truncated series together with the evidence for its accuracy.
struct SeriesResult {
    double value = 0.0;
    int terms = 0;                 // number of terms summed
    double residual_bound = 0.0;   // bound (or estimate) for the omitted remainder
    int clamped = 0;               // inversion values clamped from tiny negatives
};

/// Neumaier-compensated accumulator.
class CompensatedSum {
  public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            c_ += (sum_ - t) + x;
        else
            c_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + c_; }

  private:
    double sum_ = 0.0;
    double c_ = 0.0;
};

/// Tail of a positive series from its next term and a bound on all
/// subsequent term ratios; +inf when the ratio test is not conclusive.
inline double geometric_tail(double next_term, double ratio_bound) {
    if (next_term == 0.0) return 0.0;
    if (!(ratio_bound < 1.0)) return std::numeric_limits<double>::infinity();
    return next_term / (1.0 - ratio_bound);
}

/// Ratio w_{m+1} P_{m+1}(1) / (w_m P_m(1)) of the zonal series weights, where
/// w_m = 1, 2, 2, ... for d = 2 and (m + nu)/nu for d >= 3.  Nonincreasing in
/// m >= 1.
inline double zonal_weight_ratio(int d, int m) {
    if (d == 2) return m == 0 ? 2.0 : 1.0;
    const double nu = 0.5 * (d - 2);
    return ((m + 1 + nu) / (m + nu)) * ((m + 2.0 * nu) / (m + 1.0));
}

}  // namespace spherehit::specfun
