// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "spherehit/error.hpp"
#include "spherehit/specfun/bessel.hpp"
#include "spherehit/specfun/polynomials.hpp"
#include "spherehit/specfun/quadrature.hpp"

namespace spherehit::specfun {

/// Rotationally symmetric subset {z : x_lo <= z1/r <= x_hi} of the sphere.
struct Band {
    double x_lo = -1.0;
    double x_hi = 1.0;

    bool degenerate() const { return x_lo == x_hi; }
    bool full() const { return x_lo == -1.0 && x_hi == 1.0; }
};

inline void validate(const Band& b) {
    spherehit::detail::require(-1.0 <= b.x_lo && b.x_lo <= b.x_hi && b.x_hi <= 1.0,
                               "band: need -1 <= x_lo <= x_hi <= 1");
}

inline void validate_dimension(int d) { spherehit::detail::require(d >= 2, "dimension d must be >= 2"); }

/// Normalizing constant of the zonal weight: w_d(cos t) dx = c_d sin^{d-2} t dt.
inline double zonal_weight_constant(int d) {
    return std::exp(std::lgamma(0.5 * d) - 0.5 * std::log(std::numbers::pi) - std::lgamma(0.5 * (d - 1)));
}

/// Density of z1/r under the uniform probability on S^{d-1}.
inline double zonal_weight(int d, double x) {
    validate_dimension(d);
    return zonal_weight_constant(d) * std::pow(1.0 - x * x, 0.5 * (d - 3));
}

/// log of the average of exp<w, xi> over the unit sphere S^{m-1} in R^m, |w| = rho.
inline double log_sphere_exp_average(int m, double rho) {
    spherehit::detail::require(m >= 1, "sphere_exp_average: m must be >= 1");
    spherehit::detail::require(rho >= 0.0, "sphere_exp_average: rho must be >= 0");
    if (m == 1) return rho + std::log1p(std::exp(-2.0 * rho)) - std::numbers::ln2;
    const double h = 0.5 * m;
    if (rho <= 30.0) {
        const double q = 0.25 * rho * rho;
        double term = 1.0, sum = 1.0;
        for (int k = 1; k < 500; ++k) {
            term *= q / (k * (k - 1 + h));
            sum += term;
            if (term < 1e-17 * sum) break;
        }
        return std::log(sum);
    }
    return std::lgamma(h) + (1.0 - h) * std::log(0.5 * rho) + std::log(bessel_i(h - 1.0, rho, true)) + rho;
}

/// Lambda_m(rho) = Gamma(m/2) (rho/2)^{1-m/2} I_{m/2-1}(rho); Lambda_1 = cosh.
inline double sphere_exp_average(int m, double rho) {
    if (m == 1) {
        spherehit::detail::require(rho >= 0.0, "sphere_exp_average: rho must be >= 0");
        return std::cosh(rho);
    }
    return std::exp(log_sphere_exp_average(m, rho));
}

namespace detail {

// int_0^theta sin^m
inline double sin_power_integral(int m, double theta) {
    const double s = std::sin(theta), c = std::cos(theta);
    double j_even = theta, j_odd = 1.0 - c;
    double j = m % 2 == 0 ? j_even : j_odd;
    double sp = m % 2 == 0 ? s : s * s;  // sin^{k-1} for k = 2 (even) or 3 (odd)
    for (int k = m % 2 == 0 ? 2 : 3; k <= m; k += 2) {
        j = -sp * c / k + (k - 1.0) / k * j;
        sp *= s * s;
    }
    return j;
}

}  // namespace detail

/// Uniform probability of a band on S^{d-1}.
inline double band_measure(int d, const Band& band) {
    validate_dimension(d);
    validate(band);
    if (band.degenerate()) return 0.0;
    if (band.full()) return 1.0;
    const double th_lo = std::acos(band.x_lo), th_hi = std::acos(band.x_hi);
    const double v = zonal_weight_constant(d) *
                     (detail::sin_power_integral(d - 2, th_lo) - detail::sin_power_integral(d - 2, th_hi));
    return std::clamp(v, 0.0, 1.0);
}

/// int_band P_n(x) w_d(x) dx for n = 0..count-1, with P_n = T_n (d = 2) or
/// C_n^nu (d >= 3), from closed-form antiderivatives.
inline std::vector<double> poly_band_integrals(int d, int count, const Band& band) {
    validate_dimension(d);
    validate(band);
    std::vector<double> out(std::max(count, 0), 0.0);
    if (count <= 0 || band.degenerate()) return out;
    out[0] = band_measure(d, band);
    if (band.full()) return out;
    const double th_lo = std::acos(band.x_lo), th_hi = std::acos(band.x_hi);
    if (d == 2) {
        for (int n = 1; n < count; ++n)
            out[n] = (std::sin(n * th_lo) - std::sin(n * th_hi)) / (n * std::numbers::pi);
        return out;
    }
    const double nu = 0.5 * (d - 2);
    const double cd = zonal_weight_constant(d);
    const double g_lo = std::pow(std::sin(th_lo), d - 1), g_hi = std::pow(std::sin(th_hi), d - 1);
    // C_{n-1}^{nu+1} at both ends, by the Gegenbauer recurrence
    double p_lo = 1.0, q_lo = 0.0, p_hi = 1.0, q_hi = 0.0;
    const double mu = nu + 1.0;
    for (int n = 1; n < count; ++n) {
        const int k = n - 1;
        if (k >= 1) {
            const double a = 2.0 * (k - 1 + mu) / k, b = (k - 2 + 2.0 * mu) / k;
            const double nl = a * band.x_lo * p_lo - b * q_lo;
            const double nh = a * band.x_hi * p_hi - b * q_hi;
            q_lo = p_lo;
            p_lo = nl;
            q_hi = p_hi;
            p_hi = nh;
        }
        out[n] = cd * (2.0 * nu / (n * (n + 2.0 * nu))) * (g_lo * p_lo - g_hi * p_hi);
    }
    return out;
}

inline double poly_band_integral(int d, int n, const Band& band) {
    spherehit::detail::require(n >= 0, "poly_band_integral: n must be >= 0");
    return poly_band_integrals(d, n + 1, band)[n];
}

/// int_band e^{c1 x} Lambda_{d-1}(c_perp sqrt(1-x^2)) P_n(x) w_d(x) dx for
/// n = 0..count-1, by adaptive Gauss-Legendre in theta = arccos x.
inline std::vector<double> exp_poly_band_integrals(int d, int count, const Band& band, double c1, double c_perp,
                                                   double abs_tol = 1e-12) {
    validate_dimension(d);
    validate(band);
    spherehit::detail::require(c_perp >= 0.0, "exp_poly_band_integral: c_perp must be >= 0");
    if (c1 == 0.0 && c_perp == 0.0) return poly_band_integrals(d, count, band);
    std::vector<double> out(std::max(count, 0), 0.0);
    if (count <= 0 || band.degenerate()) return out;
    const double th_lo = std::acos(band.x_lo), th_hi = std::acos(band.x_hi);
    const double shift = std::hypot(c1, c_perp);
    const double cd = zonal_weight_constant(d);
    auto f = [&](double th, std::span<double> v) {
        const double x = std::cos(th), s = std::sin(th);
        const double w = cd * (d == 2 ? 1.0 : std::pow(s, d - 2)) *
                         std::exp(c1 * x + log_sphere_exp_average(d - 1, c_perp * s) - shift);
        zonal_values(d, x, v);
        for (double& e : v) e *= w;
    };
    adaptive_gauss_legendre(f, th_hi, th_lo, out, abs_tol * std::exp(-shift), 0.0);
    for (double& e : out) e *= std::exp(shift);
    return out;
}

inline double exp_poly_band_integral(int d, int n, const Band& band, double c1, double c_perp) {
    spherehit::detail::require(n >= 0, "exp_poly_band_integral: n must be >= 0");
    return exp_poly_band_integrals(d, n + 1, band, c1, c_perp)[n];
}

}  // namespace spherehit::specfun
