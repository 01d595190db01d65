// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <numbers>

namespace spherehit::verify {

/// Poisson kernel of the sphere relative to the uniform probability, as a
/// function of x = z1/r.
inline double poisson_kernel(int d, double a, double r, double x) {
    if (a < r) {
        const double s = a / r;
        return (1.0 - s * s) / std::pow(1.0 - 2.0 * s * x + s * s, 0.5 * d);
    }
    const double s = r / a;
    return std::pow(s, d - 2) * (1.0 - s * s) / std::pow(1.0 - 2.0 * s * x + s * s, 0.5 * d);
}

// d = 3 exterior first passage: a one-sided stable-1/2 law scaled by r/a.

inline double half_density(double a, double r, double t) {
    const double h = a - r;
    return (r / a) * h / std::sqrt(2.0 * std::numbers::pi * t * t * t) * std::exp(-h * h / (2.0 * t));
}

inline double half_cdf(double a, double r, double t) { return (r / a) * std::erfc((a - r) / std::sqrt(2.0 * t)); }

/// P(t < tau_r < infinity).
inline double half_tail(double a, double r, double t) { return (r / a) * std::erf((a - r) / std::sqrt(2.0 * t)); }

}  // namespace spherehit::verify
