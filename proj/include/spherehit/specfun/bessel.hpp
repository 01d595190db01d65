// SPDX-License-Identifier: Apache-2.0
#pragma once

// Modified Bessel functions I_nu and K_nu of real order nu >= 0 for real or
// complex argument.  K is obtained from Temme's series (|z| < 2) or Steed's
// continued fraction (|z| >= 2) at the reduced order |mu| <= 1/2 and carried
// upward by the (stable) forward recurrence; I follows from the continued
// fraction for I_{nu+1}/I_nu and the Wronskian
//     I_nu K_{nu+1} + I_{nu+1} K_nu = 1/z.
// Values are kept as mantissa * exp(log_scale) so that large orders and large
// arguments never overflow.

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <type_traits>
#include <vector>

#include "spherehit/error.hpp"

namespace spherehit::specfun {

template <class T>
inline constexpr bool is_complex_v = false;
template <class T>
inline constexpr bool is_complex_v<std::complex<T>> = true;

/// mantissa * exp(log_scale)
template <class Scalar>
struct LogScaled {
    Scalar mantissa{};
    double log_scale = 0.0;

    Scalar value() const { return mantissa * std::exp(log_scale); }
    double log_abs() const { return std::log(std::abs(mantissa)) + log_scale; }
};

/// num / den, combining scales before exponentiating.
template <class Scalar>
Scalar ratio(const LogScaled<Scalar>& num, const LogScaled<Scalar>& den,
             double extra_log = 0.0) {
    return num.mantissa / den.mantissa *
           std::exp(num.log_scale - den.log_scale + extra_log);
}

/// I_{nu0+n}(z) and K_{nu0+n}(z) for n = 0..count-1.
template <class Scalar>
struct BesselLadder {
    std::vector<LogScaled<Scalar>> i;
    std::vector<LogScaled<Scalar>> k;
};

namespace detail {

// Taylor coefficients of 1/Gamma(z) = sum_k c[k] z^(k+1) (Abramowitz & Stegun
// 6.1.34).  1/Gamma(1+x) = sum_k c[k] x^k.
inline constexpr std::array<double, 26> kRecipGamma = {
    1.0000000000000000,  0.5772156649015329,  -0.6558780715202538,
    -0.0420026350340952, 0.1665386113822915,  -0.0421977345555443,
    -0.0096219715278770, 0.0072189432466630,  -0.0011651675918591,
    -0.0002152416741149, 0.0001280502823882,  -0.0000201348547807,
    -0.0000012504934821, 0.0000011330272320,  -0.0000002056338417,
    0.0000000061160950,  0.0000000050020075,  -0.0000000011812746,
    0.0000000001043427,  0.0000000000077823,  -0.0000000000036968,
    0.0000000000005100,  -0.0000000000000206, -0.0000000000000054,
    0.0000000000000014,  0.0000000000000001};

/// 1/Gamma(1+x) for |x| <= 1/2.
inline double recip_gamma_1p(double x) {
    double sum = 0.0;
    for (auto it = kRecipGamma.rbegin(); it != kRecipGamma.rend(); ++it) sum = sum * x + *it;
    return sum;
}

/// Temme's gamma combinations for |mu| <= 1/2:
///   gam1 = (1/Gamma(1-mu) - 1/Gamma(1+mu)) / (2 mu)
///   gam2 = (1/Gamma(1-mu) + 1/Gamma(1+mu)) / 2
inline void temme_gammas(double mu, double& gam1, double& gam2, double& gampl, double& gammi) {
    // odd and even parts of the series in mu
    double odd = 0.0, even = 0.0;
    const double mu2 = mu * mu;
    for (int k = static_cast<int>(kRecipGamma.size()) - 1; k >= 0; --k) {
        if (k % 2 == 1)
            odd = odd * mu2 + kRecipGamma[k];
        else
            even = even * mu2 + kRecipGamma[k];
    }
    // recip_gamma_1p(x) = even(x^2) + x * odd(x^2)
    gam1 = -odd;
    gam2 = even;
    gampl = even + mu * odd;
    gammi = even - mu * odd;
}

template <class Scalar>
Scalar unit_phase_of_exp_neg(const Scalar& z) {
    if constexpr (is_complex_v<Scalar>)
        return std::polar(1.0, -z.imag());
    else
        return Scalar(1);
}

template <class Scalar>
double real_part(const Scalar& z) {
    if constexpr (is_complex_v<Scalar>)
        return z.real();
    else
        return z;
}

template <class Scalar>
Scalar sinhc(const Scalar& e) {
    if (std::abs(e) < 1e-4) return Scalar(1) + e * e / 6.0;
    return std::sinh(e) / e;
}

/// K_mu(z) and K_{mu+1}(z), |mu| <= 1/2, |z| < 2, by Temme's series.
template <class Scalar>
void temme_k(double mu, const Scalar& z, Scalar& k_mu, Scalar& k_mu1) {
    constexpr double eps = std::numeric_limits<double>::epsilon();
    const Scalar x2 = 0.5 * z;
    const double pimu = std::numbers::pi * mu;
    const double fact = std::abs(pimu) < eps ? 1.0 : pimu / std::sin(pimu);
    Scalar d = -std::log(x2);
    Scalar e = mu * d;
    const Scalar fact2 = sinhc(e);
    double gam1, gam2, gampl, gammi;
    temme_gammas(mu, gam1, gam2, gampl, gammi);
    Scalar ff = fact * (gam1 * std::cosh(e) + gam2 * fact2 * d);
    Scalar sum = ff;
    e = std::exp(e);
    Scalar p = 0.5 * e / gampl;
    Scalar q = 0.5 / (e * gammi);
    Scalar c = 1.0;
    d = x2 * x2;
    Scalar sum1 = p;
    const double mu2 = mu * mu;
    for (int i = 1; i < 10000; ++i) {
        const double di = i;
        ff = (di * ff + p + q) / (di * di - mu2);
        c *= d / di;
        p /= (di - mu);
        q /= (di + mu);
        const Scalar del = c * ff;
        sum += del;
        sum1 += c * (p - di * ff);
        if (std::abs(del) < std::abs(sum) * eps) break;
    }
    k_mu = sum;
    k_mu1 = sum1 * (2.0 / z);
}

/// e^{z} K_mu(z) and e^{z} K_{mu+1}(z), |mu| <= 1/2, |z| >= 2, by Steed's
/// continued fraction.
template <class Scalar>
void steed_k_scaled(double mu, const Scalar& z, Scalar& k_mu, Scalar& k_mu1) {
    constexpr double eps = std::numeric_limits<double>::epsilon();
    const double mu2 = mu * mu;
    Scalar b = 2.0 * (1.0 + z);
    Scalar d = 1.0 / b;
    Scalar h = d, delh = d;
    Scalar q1 = 0.0, q2 = 1.0;
    const double a1 = 0.25 - mu2;
    Scalar q = a1, c = a1;
    double a = -a1;
    Scalar s = 1.0 + q * delh;
    for (int i = 2; i < 200000; ++i) {
        a -= 2.0 * (i - 1);
        c = -a * c / static_cast<double>(i);
        const Scalar qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        const Scalar dels = q * delh;
        s += dels;
        if (std::abs(dels) < std::abs(s) * eps) break;
    }
    h = a1 * h;
    k_mu = std::sqrt(std::numbers::pi / (2.0 * z)) / s;
    k_mu1 = k_mu * (mu + z + 0.5 - h) / z;
}

/// I_{nu+1}(z) / I_nu(z) by the modified Lentz method.
template <class Scalar>
Scalar i_ratio_cf(double nu, const Scalar& z) {
    constexpr double tiny = 1e-300;
    constexpr double eps = std::numeric_limits<double>::epsilon();
    const Scalar zinv = 1.0 / z;
    Scalar f = tiny, c = f, d = 0.0;
    const int max_iter = 100000 + static_cast<int>(4.0 * std::abs(z));
    for (int k = 1; k < max_iter; ++k) {
        const Scalar b = 2.0 * (nu + k) * zinv;
        d = b + d;
        if (std::abs(d) < tiny) d = tiny;
        c = b + 1.0 / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const Scalar delta = c * d;
        f *= delta;
        if (std::abs(delta - 1.0) < 4.0 * eps) return f;
    }
    throw DomainError("bessel: continued fraction for I ratio did not converge");
}

}  // namespace detail

/// I and K at orders nu0, nu0+1, ..., nu0+count-1.  Requires nu0 >= 0, z not
/// zero and not on the negative real axis.  If want_i is false only K is
/// filled.
template <class Scalar>
BesselLadder<Scalar> bessel_ik_ladder(double nu0, int count, const Scalar& z, bool want_i = true) {
    spherehit::detail::require(nu0 >= 0.0 && std::isfinite(nu0), "bessel: order must be >= 0");
    spherehit::detail::require(count >= 1, "bessel: ladder needs at least one order");
    spherehit::detail::require(std::abs(z) > 0.0, "bessel: argument must be nonzero");
    if constexpr (!is_complex_v<Scalar>) {
        spherehit::detail::require(z > 0.0, "bessel: real argument must be positive");
    } else {
        spherehit::detail::require(!(z.imag() == 0.0 && z.real() < 0.0),
                                   "bessel: argument on the branch cut");
    }

    const int nl = static_cast<int>(std::floor(nu0 + 0.5));
    const double mu = nu0 - nl;  // in [-1/2, 1/2)

    Scalar k_lo, k_hi;
    double scale = 0.0;
    if (std::abs(z) < 2.0) {
        detail::temme_k(mu, z, k_lo, k_hi);
    } else {
        detail::steed_k_scaled(mu, z, k_lo, k_hi);
        const Scalar phase = detail::unit_phase_of_exp_neg(z);
        k_lo *= phase;
        k_hi *= phase;
        scale = -detail::real_part(z);
    }

    // K at orders mu + j, j = 0..nl+count (one beyond the last for the Wronskian).
    BesselLadder<Scalar> out;
    out.k.reserve(count + 1);
    const Scalar zinv = 1.0 / z;
    const int top = nl + count;
    auto store = [&](int j, const Scalar& v) {
        if (j >= nl) out.k.push_back({v, scale});
    };
    store(0, k_lo);
    if (top >= 1) store(1, k_hi);
    Scalar km = k_lo, kc = k_hi;
    for (int j = 1; j < top; ++j) {
        const Scalar kn = km + 2.0 * (mu + j) * zinv * kc;
        km = kc;
        kc = kn;
        if (std::abs(kc) > 1e200) {
            km *= 1e-200;
            kc *= 1e-200;
            scale += 200.0 * std::numbers::ln10;
        }
        store(j + 1, kc);
    }

    if (want_i) {
        out.i.resize(count);
        // ratios f_m = I_{m+1}/I_m, downward from the top order
        std::vector<Scalar> f(count);
        f[count - 1] = detail::i_ratio_cf(nu0 + count - 1, z);
        for (int n = count - 1; n > 0; --n) {
            const double m = nu0 + n;
            f[n - 1] = 1.0 / (2.0 * m * zinv + f[n]);
        }
        for (int n = 0; n < count; ++n) {
            const auto& kn = out.k[n];
            const auto& kn1 = out.k[n + 1];
            const Scalar sum = kn1.mantissa + f[n] * kn.mantissa * std::exp(kn.log_scale - kn1.log_scale);
            out.i[n] = {1.0 / (z * sum), -kn1.log_scale};
        }
    }
    out.k.resize(count);
    return out;
}

/// Modified Bessel function of the first kind; e^{-x} I_nu(x) if scaled.
inline double bessel_i(double nu, double x, bool scaled = false) {
    spherehit::detail::require(nu >= 0.0, "bessel_i: order must be >= 0");
    spherehit::detail::require(x > 0.0, "bessel_i: argument must be > 0");
    const auto lad = bessel_ik_ladder<double>(nu, 1, x, true);
    const auto& v = lad.i[0];
    return v.mantissa * std::exp(v.log_scale - (scaled ? x : 0.0));
}

/// Modified Bessel function of the second kind; e^{x} K_nu(x) if scaled.
/// K_{-nu} = K_nu.
inline double bessel_k(double nu, double x, bool scaled = false) {
    spherehit::detail::require(x > 0.0, "bessel_k: argument must be > 0");
    const auto lad = bessel_ik_ladder<double>(std::abs(nu), 1, x, false);
    const auto& v = lad.k[0];
    return v.mantissa * std::exp(v.log_scale + (scaled ? x : 0.0));
}

/// Complex-argument versions (principal branch), used on inversion contours.
inline std::complex<double> bessel_i(double nu, std::complex<double> z) {
    const auto lad = bessel_ik_ladder(nu, 1, z, true);
    return lad.i[0].value();
}

inline std::complex<double> bessel_k(double nu, std::complex<double> z) {
    const auto lad = bessel_ik_ladder(std::abs(nu), 1, z, false);
    return lad.k[0].value();
}

}  // namespace spherehit::specfun
