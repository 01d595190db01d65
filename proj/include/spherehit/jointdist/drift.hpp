// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <vector>

#include "spherehit/jointdist/joint.hpp"
#include "spherehit/jointdist/probability.hpp"

namespace spherehit::jointdist {

/// E_a[e^{-lambda sigma} e^{<u, B^{(v)}_sigma>}; sigma < infinity] for the
/// drifted motion B_t + t v.  gamma is the planar angle between the
/// perpendicular parts of u and v.
inline SeriesResult drift_joint_laplace(const Geometry& g, const Drift& v, double lambda, double u_axis,
                                        double u_perp, const SeriesControl& ctrl = {}, double gamma = 0.0) {
    spherehit::detail::require(v.v_perp >= 0.0 && u_perp >= 0.0, "drift_joint_laplace: perpendicular parts must be >= 0");
    const double w_perp_sq = u_perp * u_perp + v.v_perp * v.v_perp + 2.0 * u_perp * v.v_perp * std::cos(gamma);
    auto res = joint_laplace(g, lambda + 0.5 * v.speed_sq(), u_axis + v.v1, std::sqrt(std::max(w_perp_sq, 0.0)), ctrl);
    const double tilt = std::exp(-g.a * v.v1);
    res.value *= tilt;
    res.residual_bound *= tilt;
    return res;
}

/// Drifted joint density at (t, x): psi(t, x) e^{-a v1 - |v|^2 t/2} times the
/// tilt e^{c1 + c2 cos phi} over the residual angle phi.
struct DriftDensity {
    double axial_factor = 0.0;
    double c1 = 0.0;  // r v1 x
    double c2 = 0.0;  // r v_perp sqrt(1 - x^2)
    SeriesResult psi;

    /// Density relative to dt ds_r after averaging the tilt over phi.
    double averaged(int d) const { return axial_factor * std::exp(c1) * specfun::sphere_exp_average(d - 1, c2); }
};

inline DriftDensity drift_joint_density(const Geometry& g, const Drift& v, double t, double x,
                                        const SeriesControl& ctrl = {}, const InversionControl& inv = {}) {
    DriftDensity out;
    out.psi = joint_density(g, t, x, ctrl, inv);
    out.axial_factor = out.psi.value * std::exp(-g.a * v.v1 - 0.5 * v.speed_sq() * t);
    out.c1 = g.r * v.v1 * x;
    out.c2 = g.r * v.v_perp * std::sqrt(std::max(0.0, 1.0 - x * x));
    return out;
}

/// int_band e^{<v, z>} ds_r(z).
inline double band_tilt_integral(const Geometry& g, const Drift& v, const Band& band) {
    return specfun::exp_poly_band_integral(g.d, 0, band, g.r * v.v1, g.r * v.v_perp);
}

namespace detail {

inline int drift_terms(const JointQuery& q, const SeriesControl& ctrl, double tilt0, double& residual) {
    const Geometry& g = q.geometry;
    const double alpha = 0.5 * q.drift->speed_sq();
    const double pre = std::exp(-g.a * q.drift->v1) * tilt0 * std::exp(-alpha * q.t1);
    return required_terms(
        [&](int n) {
            double b = envelope_tail(g, n);
            if (q.t1 > 0.0) b = std::min(b, tail_envelope(g, n, q.t1));
            return pre * b;
        },
        ctrl, "drift_band_probability", residual);
}

}  // namespace detail

/// P(t1 < sigma < t2, B^{(v)}_sigma in band) for the drifted motion.
inline SeriesResult drift_band_probability(const JointQuery& q, const SeriesControl& ctrl = {},
                                           const InversionControl& inv = {}) {
    validate(q);
    const Geometry& g = q.geometry;
    const Drift v = q.drift.value_or(Drift{});
    SeriesResult res;
    if (q.band.degenerate()) return res;
    const double alpha = 0.5 * v.speed_sq();
    const double c1 = g.r * v.v1, cp = g.r * v.v_perp;
    const double tilt0 = specfun::exp_poly_band_integral(g.d, 0, q.band, c1, cp);
    JointQuery qq = q;
    qq.drift = v;
    const bool only_base = q.band.full() && c1 == 0.0 && cp == 0.0;
    const int count = only_base ? 1 : detail::drift_terms(qq, ctrl, tilt0, res.residual_bound);
    const auto w = fpt::window_ladder(g.nu(), count, g.a, g.r, q.t1, q.t2, alpha, inv);
    const auto e = specfun::exp_poly_band_integrals(g.d, count, q.band, c1, cp);
    specfun::CompensatedSum sum;
    for (int n = 0; n < count; ++n) sum.add(series_weight(g.d, n) * std::pow(g.a / g.r, n) * w.values[n] * e[n]);
    const double pre = std::exp(-g.a * v.v1);
    res.value = pre * sum.value();
    res.terms = count;
    res.clamped = w.clamped;
    return res;
}

/// e^{|v|^2 t/2} P(t < sigma < infinity, B^{(v)}_sigma in band), summing the
/// exponentially weighted tails H^{(nu+n)}(t) obtained by quadrature.
inline SeriesResult drift_tail_probability_scaled(const JointQuery& q, const SeriesControl& ctrl = {},
                                                  const InversionControl& inv = {}) {
    validate(q);
    const Geometry& g = q.geometry;
    spherehit::detail::require(q.drift.has_value() && q.drift->speed_sq() > 0.0,
                               "drift_tail_probability: requires a nonzero drift");
    spherehit::detail::require(q.t1 > 0.0 && std::isinf(q.t2), "drift_tail_probability: window must be [t, infinity)");
    const Drift& v = *q.drift;
    const double c1 = g.r * v.v1, cp = g.r * v.v_perp;
    SeriesResult res;
    if (q.band.degenerate()) return res;
    const double tilt0 = specfun::exp_poly_band_integral(g.d, 0, q.band, c1, cp);
    const double alpha = 0.5 * v.speed_sq();
    int count = detail::drift_terms(q, ctrl, tilt0, res.residual_bound);
    res.residual_bound *= std::exp(alpha * q.t1);
    const auto h = fpt::h_exp_tail_scaled_ladder(g.nu(), count, g.a, g.r, v.speed(), q.t1, inv);
    const auto e = specfun::exp_poly_band_integrals(g.d, count, q.band, c1, cp);
    specfun::CompensatedSum sum;
    for (int n = 0; n < count; ++n) sum.add(series_weight(g.d, n) * std::pow(g.a / g.r, n) * h[n] * e[n]);
    res.value = std::exp(-g.a * v.v1) * sum.value();
    res.terms = count;
    return res;
}

inline SeriesResult drift_tail_probability(const JointQuery& q, const SeriesControl& ctrl = {},
                                           const InversionControl& inv = {}) {
    auto res = drift_tail_probability_scaled(q, ctrl, inv);
    const double s = std::exp(-0.5 * q.drift->speed_sq() * q.t1);
    res.value *= s;
    res.residual_bound *= s;
    return res;
}

/// Leading-order drifted tail.
inline double drift_tail_asymptotic(const JointQuery& q) {
    validate(q);
    const Geometry& g = q.geometry;
    spherehit::detail::require(q.drift.has_value() && q.drift->speed_sq() > 0.0,
                               "drift_tail_asymptotic: requires a nonzero drift");
    spherehit::detail::require(g.a > g.r, "drift_tail_asymptotic: requires a > r");
    spherehit::detail::require(q.t1 > 1.0, "drift_tail_asymptotic: t must be > 1");
    const Drift& v = *q.drift;
    const double tilt = std::exp(-g.a * v.v1) * band_tilt_integral(g, v, q.band);
    return fpt::h_exp_tail_asymptotic(g.nu(), g.a, g.r, v.speed(), q.t1) * tilt;
}

}  // namespace spherehit::jointdist
