// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "spherehit/error.hpp"
#include "spherehit/specfun/polynomials.hpp"
#include "spherehit/specfun/series.hpp"

namespace spherehit::specfun {

/// Speed-measure density of the projected process x = z1/r on [-1, 1]:
/// dm = 2 (1 - x^2)^{(d-3)/2} dx.
inline double speed_measure_density(int d, double x) { return 2.0 * std::pow(1.0 - x * x, 0.5 * (d - 3)); }

/// Transition density p_d(t, x, y) of the first coordinate of spherical
/// Brownian motion on S^{d-1}, relative to the speed measure dm(y).
inline SeriesResult projected_transition_density_series(int d, double t, double x, double y,
                                                        const SeriesControl& ctrl = {}) {
    spherehit::detail::require(d >= 2, "projected_transition_density: d must be >= 2");
    spherehit::detail::require(t > 0.0, "projected_transition_density: t must be > 0");
    spherehit::detail::require(std::abs(x) <= 1.0 && std::abs(y) <= 1.0,
                               "projected_transition_density: |x|, |y| must be <= 1");
    const double nu = 0.5 * (d - 2);
    const int n_max = ctrl.n_max;
    std::vector<double> px(n_max + 2), py(n_max + 2);
    zonal_values(d, x, px);
    zonal_values(d, y, py);

    // log of phi_n(1)^2 e^{-n(n+2nu)t/2}: dominating term for |phi_n(x) phi_n(y)|
    auto log_norm = [&](int n) {
        if (d == 2) return n == 0 ? -std::log(2.0 * std::numbers::pi) : -std::log(std::numbers::pi);
        return std::log(n + nu) + std::lgamma(n + 1.0) - std::log(std::numbers::pi) - std::lgamma(n + 2.0 * nu) +
               (nu - 1.0) * std::log(4.0) + 2.0 * std::lgamma(nu);
    };
    auto log_bound = [&](int n) {
        return log_norm(n) + 2.0 * std::log(zonal_at_one(d, n)) - 0.5 * n * (n + 2.0 * nu) * t;
    };

    CompensatedSum sum;
    SeriesResult res;
    for (int n = 0; n <= n_max; ++n) {
        sum.add(std::exp(log_norm(n) - 0.5 * n * (n + 2.0 * nu) * t) * px[n] * py[n]);
        const int m = n + 1;
        const double ratio = zonal_weight_ratio(d, m) * std::exp(-0.5 * (2.0 * m + 1 + 2.0 * nu) * t);
        res.terms = n + 1;
        res.residual_bound = geometric_tail(std::exp(log_bound(m)), ratio);
        if (res.residual_bound < ctrl.abs_tol) break;
    }
    res.value = sum.value();
    if (!(res.residual_bound < ctrl.abs_tol))
        throw TruncationError("projected_transition_density: series did not converge", res.terms,
                              res.residual_bound);
    return res;
}

inline double projected_transition_density(int d, double t, double x, double y, const SeriesControl& ctrl = {}) {
    return projected_transition_density_series(d, t, x, y, ctrl).value;
}

}  // namespace spherehit::specfun
