// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "spherehit/error.hpp"

namespace spherehit::specfun {

/// Chebyshev polynomial T_n(x) by the three-term recurrence.
inline double chebyshev_t(int n, double x) {
    spherehit::detail::require(n >= 0, "chebyshev_t: degree must be >= 0");
    spherehit::detail::require(std::abs(x) <= 1.0, "chebyshev_t: |x| must be <= 1");
    if (n == 0) return 1.0;
    double prev = 1.0, cur = x;
    for (int k = 1; k < n; ++k) {
        const double next = 2.0 * x * cur - prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

/// Gegenbauer polynomial C_n^nu(x), nu > 0, from
///   n C_n = 2(n-1+nu) x C_{n-1} - (n-2+2nu) C_{n-2}.
inline double gegenbauer(int n, double nu, double x) {
    spherehit::detail::require(n >= 0, "gegenbauer: degree must be >= 0");
    spherehit::detail::require(nu > 0.0, "gegenbauer: nu must be > 0 (use chebyshev_t for d = 2)");
    spherehit::detail::require(std::abs(x) <= 1.0, "gegenbauer: |x| must be <= 1");
    if (n == 0) return 1.0;
    double prev = 1.0, cur = 2.0 * nu * x;
    for (int k = 2; k <= n; ++k) {
        const double next = (2.0 * (k - 1 + nu) * x * cur - (k - 2 + 2.0 * nu) * prev) / k;
        prev = cur;
        cur = next;
    }
    return cur;
}

/// log C_n^nu(1) = log Gamma(n+2nu) - log n! - log Gamma(2nu).
inline double log_gegenbauer_at_one(int n, double nu) {
    return std::lgamma(n + 2.0 * nu) - std::lgamma(n + 1.0) - std::lgamma(2.0 * nu);
}

/// C_n^nu(1) = Gamma(n+2nu) / (n! Gamma(2nu)).
inline double gegenbauer_at_one(int n, double nu) {
    spherehit::detail::require(n >= 0 && nu > 0.0, "gegenbauer_at_one: need n >= 0, nu > 0");
    if (n == 0) return 1.0;
    return std::exp(log_gegenbauer_at_one(n, nu));
}

/// Smallest C with C_n^nu(1) <= C n^{2nu-1} for 1 <= n <= n_max.
inline double gegenbauer_growth_constant(double nu, int n_max) {
    double c = 0.0;
    for (int n = 1; n <= n_max; ++n)
        c = std::max(c, std::exp(log_gegenbauer_at_one(n, nu) - (2.0 * nu - 1.0) * std::log(n)));
    return c;
}

/// Zonal polynomial of the sphere S^{d-1}: T_n for d = 2, C_n^{(d-2)/2} for d >= 3.
/// Fills out[n] for n = 0..out.size()-1.
inline void zonal_values(int d, double x, std::span<double> out) {
    if (out.empty()) return;
    out[0] = 1.0;
    if (out.size() == 1) return;
    if (d == 2) {
        out[1] = x;
        for (std::size_t n = 2; n < out.size(); ++n) out[n] = 2.0 * x * out[n - 1] - out[n - 2];
        return;
    }
    const double nu = 0.5 * (d - 2);
    out[1] = 2.0 * nu * x;
    for (std::size_t n = 2; n < out.size(); ++n) {
        const double k = static_cast<double>(n);
        out[n] = (2.0 * (k - 1 + nu) * x * out[n - 1] - (k - 2 + 2.0 * nu) * out[n - 2]) / k;
    }
}

inline std::vector<double> zonal_values(int d, double x, int count) {
    std::vector<double> v(count);
    zonal_values(d, x, v);
    return v;
}

/// max |P_n| on [-1, 1]: 1 for Chebyshev, C_n^nu(1) otherwise.
inline double zonal_at_one(int d, int n) {
    if (d == 2 || n == 0) return 1.0;
    return gegenbauer_at_one(n, 0.5 * (d - 2));
}

}  // namespace spherehit::specfun
