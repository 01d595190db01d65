// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "spherehit/jointdist/series_terms.hpp"
#include "spherehit/specfun/bessel.hpp"

namespace spherehit::jointdist {

/// E_a[e^{-lambda sigma_r} e^{<u, B_sigma>}; sigma_r < infinity] with
/// u = (u_axis, u_perp, 0, ...).
inline SeriesResult joint_laplace(const Geometry& g, double lambda, double u_axis, double u_perp,
                                  const SeriesControl& ctrl = {}) {
    fpt::validate(g);
    spherehit::detail::require(lambda > 0.0, "joint_laplace: lambda must be > 0");
    spherehit::detail::require(u_perp >= 0.0, "joint_laplace: u_perp must be >= 0");
    const double nu = g.nu();
    const double c1 = g.r * u_axis, cp = g.r * u_perp;
    const double rho = std::hypot(c1, cp);

    // Funk-Hecke: |int e^{r<u,z>} P_m(z1) ds| <= P_m(1) Gamma(nu+1) (2/rho)^nu I_{m+nu}(rho)
    SeriesResult res;
    int count = 1;
    if (rho > 0.0) {
        const auto lad = specfun::bessel_ik_ladder<double>(nu, ctrl.n_max + 2, rho, true);
        const double log_pre = std::lgamma(nu + 1.0) + nu * std::log(2.0 / rho);
        auto bound = [&](int n) {
            const double next = std::exp(log_pre + lad.i[n + 1].log_abs());
            const double ratio = std::min(1.0, rho / (2.0 * (n + 2 + nu)));
            return envelope_tail(g, n, next, ratio);
        };
        count = required_terms(bound, ctrl, "joint_laplace", res.residual_bound);
    }
    std::vector<double> transforms(count);
    fpt::fpt_laplace_ladder<double>(nu, g.a, g.r, lambda, transforms);
    const auto surface = specfun::exp_poly_band_integrals(g.d, count, Band{}, c1, cp);
    specfun::CompensatedSum sum;
    for (int n = 0; n < count; ++n)
        sum.add(series_weight(g.d, n) * std::pow(g.a / g.r, n) * transforms[n] * surface[n]);
    res.value = sum.value();
    res.terms = count;
    return res;
}

/// Density of the hitting place in x = z1/r relative to the uniform
/// probability on the sphere (the Poisson kernel, as a zonal series).
inline SeriesResult hitting_place_density(const Geometry& g, double x, const SeriesControl& ctrl = {}) {
    fpt::validate(g);
    spherehit::detail::require(std::abs(x) <= 1.0, "hitting_place_density: |x| must be <= 1");
    SeriesResult res;
    const int count = required_terms([&](int n) { return envelope_tail(g, n); }, ctrl, "hitting_place_density",
                                     res.residual_bound);
    std::vector<double> p(count);
    specfun::zonal_values(g.d, x, p);
    const double nu = g.nu();
    const double log_q = std::log(g.a / g.r);
    specfun::CompensatedSum sum;
    for (int n = 0; n < count; ++n) {
        double log_mag = n * log_q;
        if (g.a > g.r) log_mag += 2.0 * (n + nu) * std::log(g.r / g.a);
        sum.add(series_weight(g.d, n) * std::exp(log_mag) * p[n]);
    }
    res.value = sum.value();
    res.terms = count;
    return res;
}

/// Joint density psi(t, x) of (sigma_r, z1/r) relative to dt ds_r.  The
/// remainder is estimated from the geometric decay of the last computed
/// terms; the term count doubles until the estimate is below abs_tol.
inline SeriesResult joint_density(const Geometry& g, double t, double x, const SeriesControl& ctrl = {},
                                  const InversionControl& inv = {}) {
    fpt::validate(g);
    spherehit::detail::require(t > 0.0, "joint_density: t must be > 0");
    spherehit::detail::require(std::abs(x) <= 1.0, "joint_density: |x| must be <= 1");
    const double nu = g.nu();
    const double log_q = std::log(g.a / g.r);
    int count = std::min(16, ctrl.n_max);
    for (;;) {
        const auto dens = fpt::invert_ladder(fpt::TimeFunctional::Density, nu, count, g.a, g.r, t, 0.0, inv);
        std::vector<double> p(count);
        specfun::zonal_values(g.d, x, p);
        specfun::CompensatedSum sum;
        std::vector<double> env(count);
        for (int n = 0; n < count; ++n) {
            const double amp = series_weight(g.d, n) * std::exp(n * log_q) * dens.values[n];
            sum.add(amp * p[n]);
            env[n] = std::abs(amp) * specfun::zonal_at_one(g.d, n);
        }
        double residual;
        const int k = std::min(count - 1, 4);
        double ratio = 0.0;
        for (int j = count - k; j < count; ++j)
            ratio = std::max(ratio, env[j - 1] > 0.0 ? env[j] / env[j - 1] : (env[j] > 0.0 ? 1.0 : 0.0));
        residual = env[count - 1] == 0.0 ? 0.0 : specfun::geometric_tail(env[count - 1] * ratio, ratio);
        if (residual < ctrl.abs_tol || count >= ctrl.n_max) {
            if (!(residual < ctrl.abs_tol))
                throw TruncationError("joint_density: remainder estimate above tolerance at n_max", count, residual);
            SeriesResult res;
            res.value = sum.value();
            res.terms = count;
            res.residual_bound = residual;
            res.clamped = dens.clamped;
            return res;
        }
        count = std::min(2 * count, ctrl.n_max);
    }
}

}  // namespace spherehit::jointdist
