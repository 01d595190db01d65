// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <span>
#include <vector>

#include <boost/math/special_functions/bessel.hpp>

#include "spherehit/error.hpp"
#include "spherehit/fpt/geometry.hpp"
#include "spherehit/fpt/laplace_inversion.hpp"
#include "spherehit/specfun/bessel.hpp"
#include "spherehit/specfun/quadrature.hpp"

namespace spherehit::fpt {

enum class TimeFunctional {
    Density,  // e^{-alpha t} rho(t)
    Cdf,      // int_0^t e^{-alpha s} rho(s) ds
    Tail,     // int_t^inf e^{-alpha s} rho(s) ds
};

/// Transforms E_a[e^{-lambda tau_r}] for indices mu0 + n, n < out.size():
/// (r/a)^mu L_mu(a sqrt(2 lambda)) / L_mu(r sqrt(2 lambda)), L = I inside, K outside.
template <class Scalar>
void fpt_laplace_ladder(double mu0, double a, double r, const Scalar& lambda, std::span<Scalar> out) {
    const int count = static_cast<int>(out.size());
    const Scalar w = std::sqrt(2.0 * lambda);
    const bool interior = a < r;
    const auto la = specfun::bessel_ik_ladder<Scalar>(mu0, count, a * w, interior);
    const auto lr = specfun::bessel_ik_ladder<Scalar>(mu0, count, r * w, interior);
    const double log_ra = std::log(r / a);
    for (int n = 0; n < count; ++n) {
        const auto& num = interior ? la.i[n] : la.k[n];
        const auto& den = interior ? lr.i[n] : lr.k[n];
        out[n] = specfun::ratio(num, den, (mu0 + n) * log_ra);
    }
}

/// Same transforms at a real node in 50-digit arithmetic (Boost Bessel
/// functions plus the stable three-term recurrence in the order).  Inside the
/// sphere a negative node above the first pole is allowed; there
/// I_mu(a w)/I_mu(r w) = J_mu(a y)/J_mu(r y) with y = sqrt(-2 lambda).
inline void fpt_laplace_ladder_mp(double mu0, double a, double r, const mp_real& lambda, std::span<mp_real> out) {
    using boost::math::cyl_bessel_i;
    using boost::math::cyl_bessel_j;
    using boost::math::cyl_bessel_k;
    const int count = static_cast<int>(out.size());
    const bool interior = a < r;
    if (lambda <= 0) {
        spherehit::detail::require(interior, "fpt: negative transform node outside the sphere");
        if (lambda == 0) {
            for (auto& v : out) v = 1;
            return;
        }
    }
    const bool oscillatory = lambda < 0;
    const mp_real w = boost::multiprecision::sqrt(2 * boost::multiprecision::abs(lambda));
    auto ladder = [&](const mp_real& x) {
        std::vector<mp_real> v(count + 1);
        if (interior) {
            // downward recurrence, stable for I and for J below the turning point
            const mp_real sign = oscillatory ? -1 : 1;
            auto f = [&](double mu) { return oscillatory ? cyl_bessel_j(mp_real(mu), x) : cyl_bessel_i(mp_real(mu), x); };
            v[count] = f(mu0 + count);
            v[count - 1] = f(mu0 + count - 1);
            for (int n = count - 1; n > 0; --n) v[n - 1] = sign * v[n + 1] + 2 * mp_real(mu0 + n) / x * v[n];
        } else {
            v[0] = cyl_bessel_k(mp_real(mu0), x);
            v[1] = cyl_bessel_k(mp_real(mu0 + 1), x);
            for (int n = 1; n < count; ++n) v[n + 1] = v[n - 1] + 2 * mp_real(mu0 + n) / x * v[n];
        }
        return v;
    };
    const auto la = ladder(a * w);
    const auto lr = ladder(r * w);
    const mp_real ra = mp_real(r) / mp_real(a);
    for (int n = 0; n < count; ++n) out[n] = boost::multiprecision::pow(ra, mp_real(mu0 + n)) * la[n] / lr[n];
}

inline double fpt_laplace(double mu, double a, double r, double lambda) {
    spherehit::detail::require(mu >= 0.0, "fpt_laplace: order must be >= 0");
    spherehit::detail::require(a > 0.0 && r > 0.0 && a != r, "fpt_laplace: need a, r > 0 and a != r");
    spherehit::detail::require(lambda > 0.0, "fpt_laplace: lambda must be > 0");
    double v;
    fpt_laplace_ladder<double>(mu, a, r, lambda, std::span<double>(&v, 1));
    return v;
}

/// Inversion output for a ladder of orders.
struct LadderInversion {
    std::vector<double> values;
    int clamped = 0;
};

namespace detail {

template <class Scalar, class Base>
void apply_functional(TimeFunctional f, const Scalar& z, const Base& base, std::span<Scalar> v) {
    switch (f) {
        case TimeFunctional::Density:
            break;
        case TimeFunctional::Cdf:
            for (auto& e : v) e /= z;
            break;
        case TimeFunctional::Tail:
            for (std::size_t n = 0; n < v.size(); ++n) v[n] = (Scalar(base[n]) - v[n]) / z;
            break;
    }
}

// Value of the transform at lambda = 0 for the Tail functional.
inline std::vector<double> tail_base(double mu0, int count, double a, double r, double alpha) {
    std::vector<double> base(count);
    if (alpha > 0.0)
        fpt_laplace_ladder<double>(mu0, a, r, alpha, base);
    else
        for (int n = 0; n < count; ++n) base[n] = hit_probability(mu0 + n, a, r);
    return base;
}

// Inverts F(lambda - beta) and multiplies by e^{-beta t}; beta must stay left
// of every singularity of the shifted transform.
inline std::vector<double> invert_with(InversionMethod method, int nodes, TimeFunctional f, double mu0, int count,
                                       double a, double r, double t, double alpha, double beta = 0.0) {
    std::vector<double> res;
    if (method == InversionMethod::FixedTalbot) {
        const auto base = f == TimeFunctional::Tail ? tail_base(mu0, count, a, r, alpha) : std::vector<double>(count);
        auto transform = [&](std::complex<double> z, std::span<std::complex<double>> out) {
            const std::complex<double> zs = z - beta;
            fpt_laplace_ladder<std::complex<double>>(mu0, a, r, zs + alpha, out);
            apply_functional(f, zs, base, out);
        };
        res = talbot_invert(transform, count, t, nodes);
    } else {
        std::vector<mp_real> base(count);
        if (f == TimeFunctional::Tail) {
            if (alpha > 0.0)
                fpt_laplace_ladder_mp(mu0, a, r, mp_real(alpha), base);
            else
                for (int n = 0; n < count; ++n)
                    base[n] = (a < r || mu0 + n == 0.0)
                                  ? mp_real(1)
                                  : boost::multiprecision::pow(mp_real(r) / mp_real(a), mp_real(2 * (mu0 + n)));
        }
        auto transform = [&](const mp_real& s, std::span<mp_real> out) {
            const mp_real ss = s - mp_real(beta);
            fpt_laplace_ladder_mp(mu0, a, r, ss + mp_real(alpha), out);
            apply_functional(f, ss, base, out);
        };
        res = stehfest_invert(transform, count, t, nodes);
    }
    if (beta != 0.0)
        for (double& v : res) v *= std::exp(-beta * t);
    return res;
}

// Inside the sphere the transforms are meromorphic with poles at
// -alpha - j^2/(2 r^2), j the zeros of J_mu; j_{mu,1}^2 > 4(mu+1).
inline double interior_shift(double mu0, double r, double alpha) { return alpha + 1.8 * (mu0 + 1.0) / (r * r); }

inline std::vector<double> invert_functional(InversionMethod method, int nodes, TimeFunctional f, double mu0,
                                             int count, double a, double r, double t, double alpha) {
    if (a > r) return invert_with(method, nodes, f, mu0, count, a, r, t, alpha);
    const double beta = interior_shift(mu0, r, alpha);
    if (f != TimeFunctional::Cdf) return invert_with(method, nodes, f, mu0, count, a, r, t, alpha, beta);
    auto direct = invert_with(method, nodes, f, mu0, count, a, r, t, alpha);
    const auto tail = invert_with(method, nodes, TimeFunctional::Tail, mu0, count, a, r, t, alpha, beta);
    const auto base = tail_base(mu0, count, a, r, alpha);
    for (int n = 0; n < count; ++n)
        if (base[n] - tail[n] >= 0.5 * base[n]) direct[n] = base[n] - tail[n];
    return direct;
}

}  // namespace detail

/// Inverts one time functional for the orders mu0 + n, n < count, at time t,
/// with the transforms shifted by rate_shift (weight e^{-rate_shift s}).
inline LadderInversion invert_ladder(TimeFunctional f, double mu0, int count, double a, double r, double t,
                                     double rate_shift, const InversionControl& inv) {
    spherehit::detail::require(mu0 >= 0.0, "fpt: order must be >= 0");
    spherehit::detail::require(a > 0.0 && r > 0.0 && a != r, "fpt: need a, r > 0 and a != r");
    spherehit::detail::require(t > 0.0 && std::isfinite(t), "fpt: t must be > 0 and finite");
    spherehit::detail::require(rate_shift >= 0.0, "fpt: rate shift must be >= 0");
    spherehit::detail::require(count >= 1, "fpt: count must be >= 1");
    validate(inv);
    LadderInversion out;
    out.values = detail::invert_functional(inv.method, inv.nodes, f, mu0, count, a, r, t, rate_shift);
    if (inv.cross_check) {
        const bool talbot = inv.method == InversionMethod::FixedTalbot;
        const auto other = detail::invert_functional(talbot ? InversionMethod::GaverStehfest : InversionMethod::FixedTalbot,
                                               talbot ? kDefaultStehfestNodes : kDefaultTalbotNodes, f, mu0, count,
                                               a, r, t, rate_shift);
        for (int n = 0; n < count; ++n) {
            if (std::abs(out.values[n] - other[n]) > kCrossCheckRelTol * std::abs(out.values[n]) + kCrossCheckAbsTol)
                throw InversionError("fpt: Talbot and Gaver-Stehfest inversions disagree");
        }
    }
    for (double& v : out.values) {
        if (!std::isfinite(v)) throw InversionError("fpt: inversion produced a non-finite value");
        if (v < 0.0) {
            if (v < -kNegativeClamp) throw InversionError("fpt: inversion produced a significantly negative value");
            v = 0.0;
            ++out.clamped;
        }
    }
    return out;
}

/// int_{t1}^{t2} e^{-rate_shift s} rho^{(mu0+n)}(s) ds for n < count, with
/// 0 <= t1 < t2 <= infinity.  Chooses between CDF and tail differences to
/// avoid cancellation.
inline LadderInversion window_ladder(double mu0, int count, double a, double r, double t1, double t2,
                                     double rate_shift, const InversionControl& inv) {
    spherehit::detail::require(t1 >= 0.0 && t2 > t1, "fpt: need 0 <= t1 < t2");
    const bool open_end = std::isinf(t2);
    LadderInversion out;
    if (t1 == 0.0 && open_end) {
        out.values = detail::tail_base(mu0, count, a, r, rate_shift);
        return out;
    }
    if (t1 == 0.0) return invert_ladder(TimeFunctional::Cdf, mu0, count, a, r, t2, rate_shift, inv);
    if (open_end) return invert_ladder(TimeFunctional::Tail, mu0, count, a, r, t1, rate_shift, inv);
    const auto c1 = invert_ladder(TimeFunctional::Cdf, mu0, count, a, r, t1, rate_shift, inv);
    const auto c2 = invert_ladder(TimeFunctional::Cdf, mu0, count, a, r, t2, rate_shift, inv);
    const auto q1 = invert_ladder(TimeFunctional::Tail, mu0, count, a, r, t1, rate_shift, inv);
    const auto q2 = invert_ladder(TimeFunctional::Tail, mu0, count, a, r, t2, rate_shift, inv);
    out.clamped = c1.clamped + c2.clamped + q1.clamped + q2.clamped;
    out.values.resize(count);
    for (int n = 0; n < count; ++n) {
        const double v = c2.values[n] <= q1.values[n] ? c2.values[n] - c1.values[n] : q1.values[n] - q2.values[n];
        out.values[n] = std::max(v, 0.0);
    }
    return out;
}

inline double fpt_density(double mu, double a, double r, double t, const InversionControl& inv = {}) {
    return invert_ladder(TimeFunctional::Density, mu, 1, a, r, t, 0.0, inv).values[0];
}

inline double fpt_cdf(double mu, double a, double r, double t, const InversionControl& inv = {}) {
    return std::min(invert_ladder(TimeFunctional::Cdf, mu, 1, a, r, t, 0.0, inv).values[0],
                    hit_probability(mu, a, r));
}

/// P(t < tau_r < infinity).
inline double fpt_tail(double mu, double a, double r, double t, const InversionControl& inv = {}) {
    return std::min(invert_ladder(TimeFunctional::Tail, mu, 1, a, r, t, 0.0, inv).values[0],
                    hit_probability(mu, a, r));
}

/// kappa = (1/Gamma(nu+1)) (r^3/(2a))^nu ((a/r)^nu - (a/r)^{-nu}).
inline double kappa(double nu, double a, double r) {
    spherehit::detail::require(nu > 0.0, "kappa: nu must be > 0");
    spherehit::detail::require(r > 0.0 && a > r, "kappa: need a > r > 0");
    const double q = a / r;
    return std::exp(nu * std::log(r * r * r / (2.0 * a)) - std::lgamma(nu + 1.0)) *
           (std::pow(q, nu) - std::pow(q, -nu));
}

/// Leading-order tail: 2 log(a/r) / log t for nu = 0, kappa t^{-nu} otherwise.
inline double fpt_tail_asymptotic(double nu, double a, double r, double t) {
    spherehit::detail::require(nu >= 0.0, "fpt_tail_asymptotic: nu must be >= 0");
    spherehit::detail::require(r > 0.0 && a > r, "fpt_tail_asymptotic: need a > r > 0");
    if (nu == 0.0) {
        spherehit::detail::require(t > 1.0, "fpt_tail_asymptotic: t must be > 1 when nu = 0");
        return 2.0 * std::log(a / r) / std::log(t);
    }
    spherehit::detail::require(t > 0.0, "fpt_tail_asymptotic: t must be > 0");
    return kappa(nu, a, r) * std::pow(t, -nu);
}

/// r^{2nu} / (2^nu Gamma(nu+1) t^nu), a bound on P(t < tau_r < infinity)
/// uniform in a > r.
inline double fpt_tail_bound(double nu, double r, double t) {
    spherehit::detail::require(nu > 0.0, "fpt_tail_bound: nu must be > 0");
    spherehit::detail::require(r > 0.0 && t > 0.0, "fpt_tail_bound: need r, t > 0");
    return std::exp(nu * std::log(r * r / (2.0 * t)) - std::lgamma(nu + 1.0));
}

/// L(nu) = r^{2nu} / (2^nu Gamma(nu)) (1 - (r/a)^{2nu}).
inline double l_const(double nu, double a, double r) {
    spherehit::detail::require(nu > 0.0, "l_const: nu must be > 0");
    spherehit::detail::require(r > 0.0 && a > r, "l_const: need a > r > 0");
    return std::exp(nu * std::log(r * r / 2.0) - std::lgamma(nu)) * (1.0 - std::pow(r / a, 2.0 * nu));
}

/// e^{alpha t} int_t^inf e^{-alpha s} rho^{(mu0+n)}(s) ds with alpha = speed^2/2,
/// for n < count.  Quadrature of the inverted densities in u = s - t; the
/// range is cut where e^{-alpha u} times the tail bound at t + u falls below
/// 1e-3 abs_tol.
inline std::vector<double> h_exp_tail_scaled_ladder(double mu0, int count, double a, double r, double speed, double t,
                                                    const InversionControl& inv = {}, double abs_tol = 1e-13,
                                                    double rel_tol = 1e-10) {
    spherehit::detail::require(speed > 0.0, "h_exp_tail: speed must be > 0");
    spherehit::detail::require(t > 0.0 && std::isfinite(t), "h_exp_tail: t must be > 0");
    const double alpha = 0.5 * speed * speed;
    const double cutoff = 1e-3 * abs_tol;
    auto bound = [&](double u) {
        const double q = (a > r && mu0 > 0.0) ? std::min(1.0, fpt_tail_bound(mu0, r, t + u)) : 1.0;
        return std::exp(-alpha * u) * q;
    };
    double hi = 1.0 / alpha;
    while (bound(hi) > cutoff) hi *= 2.0;
    double lo = 0.0;
    for (int i = 0; i < 60; ++i) {
        const double mid = 0.5 * (lo + hi);
        (bound(mid) > cutoff ? lo : hi) = mid;
    }
    std::vector<double> result(count);
    auto integrand = [&](double u, std::span<double> out) {
        const auto v = invert_ladder(TimeFunctional::Density, mu0, count, a, r, t + u, 0.0, inv);
        const double w = std::exp(-alpha * u);
        for (int n = 0; n < count; ++n) out[n] = w * v.values[n];
    };
    double u0 = 0.0, step = std::min(1.0 / alpha, t) / 8.0;
    std::vector<double> piece(count);
    while (u0 < hi) {
        const double u1 = std::min(hi, u0 + step);
        specfun::adaptive_gauss_legendre(integrand, u0, u1, piece, abs_tol, rel_tol);
        for (int n = 0; n < count; ++n) result[n] += piece[n];
        u0 = u1;
        step *= 2.0;
    }
    return result;
}

inline double h_exp_tail_scaled(double nu, double a, double r, double speed, double t, const InversionControl& inv = {}) {
    spherehit::detail::require(r > 0.0 && a > r, "h_exp_tail: need a > r > 0");
    spherehit::detail::require(nu >= 0.0, "h_exp_tail: nu must be >= 0");
    return h_exp_tail_scaled_ladder(nu, 1, a, r, speed, t, inv)[0];
}

/// H(t) = int_t^inf e^{-speed^2 s/2} rho^{(nu)}(s) ds.
inline double h_exp_tail(double nu, double a, double r, double speed, double t, const InversionControl& inv = {}) {
    return std::exp(-0.5 * speed * speed * t) * h_exp_tail_scaled(nu, a, r, speed, t, inv);
}

/// Leading-order H: 2 log(a/r) e^{-alpha t} / (t (log t)^2) for nu = 0 and
/// 2 L(nu) / speed^2 t^{-nu-1} e^{-alpha t} otherwise.
inline double h_exp_tail_asymptotic(double nu, double a, double r, double speed, double t) {
    spherehit::detail::require(speed > 0.0, "h_exp_tail_asymptotic: speed must be > 0");
    spherehit::detail::require(r > 0.0 && a > r, "h_exp_tail_asymptotic: need a > r > 0");
    spherehit::detail::require(t > 1.0 || nu > 0.0, "h_exp_tail_asymptotic: t must be > 1 when nu = 0");
    spherehit::detail::require(t > 0.0, "h_exp_tail_asymptotic: t must be > 0");
    const double alpha = 0.5 * speed * speed;
    if (nu == 0.0) {
        const double lt = std::log(t);
        return 2.0 * std::log(a / r) / (t * lt * lt) * std::exp(-alpha * t);
    }
    return 2.0 * l_const(nu, a, r) / (speed * speed) * std::pow(t, -nu - 1.0) * std::exp(-alpha * t);
}

/// Explicit bound on H(t) for d >= 5, uniform in a:
///   alpha e^{-alpha t} (2 pi t)^{-d/2} [2 pi^{d/2} r^{d-2} / (alpha^2 Gamma(d/2-1))
///     + 2 pi^{d/2} r^d / (alpha Gamma(d/2)) (1/d + 1/(d-4))].
inline double h_exp_tail_bound(int d, double r, double speed, double t) {
    spherehit::detail::require(d >= 5, "h_exp_tail_bound: requires d >= 5");
    spherehit::detail::require(r > 0.0 && speed > 0.0 && t > 0.0, "h_exp_tail_bound: need r, speed, t > 0");
    const double alpha = 0.5 * speed * speed;
    const double h = 0.5 * d;
    const double pi_h = std::pow(std::numbers::pi, h);
    const double first = 2.0 * pi_h * std::pow(r, d - 2) / (alpha * alpha * std::tgamma(h - 1.0));
    const double second = 2.0 * pi_h * std::pow(r, d) / (alpha * std::tgamma(h)) * (1.0 / d + 1.0 / (d - 4.0));
    return alpha * std::exp(-alpha * t) * std::pow(2.0 * std::numbers::pi * t, -h) * (first + second);
}

}  // namespace spherehit::fpt
