// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>

#include "spherehit/error.hpp"

namespace spherehit::fpt {

enum class Regime { Interior, Exterior };

/// Brownian motion in R^d started at (a, 0, ..., 0), sphere of radius r.
struct Geometry {
    int d = 3;
    double r = 1.0;
    double a = 0.5;

    double nu() const { return 0.5 * (d - 2); }
    Regime regime() const { return a < r ? Regime::Interior : Regime::Exterior; }
};

inline void validate(const Geometry& g) {
    spherehit::detail::require(g.d >= 2, "geometry: d must be >= 2");
    spherehit::detail::require(g.r > 0.0 && std::isfinite(g.r), "geometry: r must be > 0");
    spherehit::detail::require(g.a > 0.0 && std::isfinite(g.a), "geometry: a must be > 0");
    spherehit::detail::require(g.a != g.r, "geometry: a must differ from r");
}

/// P(tau_r < infinity) for the Bessel process of index mu started at a.
inline double hit_probability(double mu, double a, double r) {
    if (a < r || mu == 0.0) return 1.0;
    return std::pow(r / a, 2.0 * mu);
}

inline double hit_probability(const Geometry& g) { return hit_probability(g.nu(), g.a, g.r); }

}  // namespace spherehit::fpt
