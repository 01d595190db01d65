// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "spherehit/jointdist/series_terms.hpp"

namespace spherehit::jointdist {

/// Constant drift v = (v1, v_perp, 0, ..., 0) in coordinates where the start
/// point is (a, 0, ..., 0).
struct Drift {
    double v1 = 0.0;
    double v_perp = 0.0;

    double speed_sq() const { return v1 * v1 + v_perp * v_perp; }
    double speed() const { return std::sqrt(speed_sq()); }
};

/// P(t1 < sigma_r < t2, B_sigma in band), optionally under drift.
struct JointQuery {
    Geometry geometry;
    double t1 = 0.0;
    double t2 = std::numeric_limits<double>::infinity();
    Band band;
    std::optional<Drift> drift;
};

inline void validate(const JointQuery& q) {
    fpt::validate(q.geometry);
    spherehit::detail::require(q.t1 >= 0.0 && q.t2 > q.t1, "query: need 0 <= t1 < t2");
    specfun::validate(q.band);
    if (q.drift) spherehit::detail::require(q.drift->v_perp >= 0.0, "query: v_perp must be >= 0");
}

namespace detail {

// Remainder bound for a band/window series: the envelope, sharpened by the
// tail-mass envelope once t1 > 0.
inline double window_bound(const Geometry& g, int n, double t1, double band_mass) {
    double b = envelope_tail(g, n);
    if (t1 > 0.0) b = std::min(b, tail_envelope(g, n, t1));
    return band_mass * b;
}

}  // namespace detail

/// Band probability with reusable band integrals.
inline SeriesResult band_probability(const JointQuery& q, BandCoefficients& coeffs, const SeriesControl& ctrl = {},
                                     const InversionControl& inv = {}) {
    validate(q);
    spherehit::detail::require(!q.drift || q.drift->speed_sq() == 0.0,
                               "band_probability: use drift_band_probability for drifted queries");
    const Geometry& g = q.geometry;
    SeriesResult res;
    if (q.band.degenerate()) return res;
    const double mass = specfun::band_measure(g.d, q.band);
    const int count = q.band.full() ? 1
                                    : required_terms([&](int n) { return detail::window_bound(g, n, q.t1, mass); },
                                                     ctrl, "band_probability", res.residual_bound);
    const auto w = fpt::window_ladder(g.nu(), count, g.a, g.r, q.t1, q.t2, 0.0, inv);
    const auto& b = coeffs.get(count);
    specfun::CompensatedSum sum;
    for (int n = 0; n < count; ++n) sum.add(series_weight(g.d, n) * std::pow(g.a / g.r, n) * w.values[n] * b[n]);
    res.value = sum.value();
    res.terms = count;
    res.clamped = w.clamped;
    return res;
}

inline SeriesResult band_probability(const JointQuery& q, const SeriesControl& ctrl = {},
                                     const InversionControl& inv = {}) {
    BandCoefficients coeffs(q.geometry.d, q.band);
    return band_probability(q, coeffs, ctrl, inv);
}

/// P(t < sigma_r < infinity, B_sigma in band) split into the base-order term
/// Q^{(nu)}(t < tau_r < infinity) s_r(band) and the correction from n >= 1.
struct TailDecomposition {
    SeriesResult total;
    double leading = 0.0;
    double correction = 0.0;
    double correction_bound = 0.0;  // analytic bound on |correction|
};

inline TailDecomposition tail_probability(const JointQuery& q, const SeriesControl& ctrl = {},
                                          const InversionControl& inv = {}) {
    validate(q);
    const Geometry& g = q.geometry;
    spherehit::detail::require(g.a > g.r, "tail_probability: requires a > r");
    spherehit::detail::require(q.t1 > 0.0 && std::isinf(q.t2), "tail_probability: window must be [t, infinity)");
    TailDecomposition out;
    out.total = band_probability(q, ctrl, inv);
    const double t = q.t1;
    const double mass = specfun::band_measure(g.d, q.band);
    out.leading = mass == 0.0 ? 0.0 : fpt::fpt_tail(g.nu(), g.a, g.r, t, inv) * mass;
    out.correction = out.total.value - out.leading;
    if (g.d == 2)
        out.correction_bound = t > 1.0 ? 2.0 / t * std::exp(0.5 * g.a * g.r)
                                       : 2.0 * std::expm1(0.5 * g.a * g.r / t);
    else
        out.correction_bound = mass * tail_envelope(g, 0, t);
    return out;
}

/// Leading-order tail: (2 log(a/r)/log t) s_r(band) for d = 2, kappa s_r(band)
/// t^{-nu} for d >= 3.
inline double tail_asymptotic(const JointQuery& q) {
    validate(q);
    const Geometry& g = q.geometry;
    return fpt::fpt_tail_asymptotic(g.nu(), g.a, g.r, q.t1) * specfun::band_measure(g.d, q.band);
}

}  // namespace spherehit::jointdist
