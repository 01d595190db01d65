// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "spherehit/error.hpp"

namespace spherehit::fpt {

enum class InversionMethod { FixedTalbot, GaverStehfest };

/// Numerical Laplace inversion settings.  With cross_check set, every
/// inversion is repeated with the other method at its default node count and
/// an InversionError is raised on disagreement.
struct InversionControl {
    InversionMethod method = InversionMethod::FixedTalbot;
    int nodes = 48;
    bool cross_check = false;
};

inline constexpr int kDefaultTalbotNodes = 48;
inline constexpr int kDefaultStehfestNodes = 40;
inline constexpr int kMaxStehfestNodes = 40;
inline constexpr double kCrossCheckRelTol = 1e-6;
inline constexpr double kCrossCheckAbsTol = 1e-10;
inline constexpr double kNegativeClamp = 1e-10;

using mp_real = boost::multiprecision::cpp_bin_float_50;

inline void validate(const InversionControl& c) {
    spherehit::detail::require(c.nodes >= 8, "inversion: nodes must be >= 8");
    if (c.method == InversionMethod::GaverStehfest) {
        spherehit::detail::require(c.nodes % 2 == 0, "inversion: Gaver-Stehfest needs an even node count");
        spherehit::detail::require(c.nodes <= kMaxStehfestNodes, "inversion: Gaver-Stehfest supports at most 40 nodes");
    }
}

/// Fixed Talbot-type inversion on the cotangent contour
///   z(th) = (N/t) (-0.6122 + 0.5017 th cot(0.6407 th) + 0.2645 i th),
/// midpoint rule in th on (-pi, pi) with N points, folded by conjugate
/// symmetry.  transform(z, out) writes F_j(z) for j < out.size().
template <class Transform>
std::vector<double> talbot_invert(Transform&& transform, int count, double t, int nodes) {
    spherehit::detail::require(t > 0.0, "inversion: t must be > 0");
    std::vector<double> acc(count, 0.0);
    std::vector<std::complex<double>> values(count);
    const double h = 2.0 * std::numbers::pi / nodes;
    const double scale = nodes / t;
    for (int k = 0; k < nodes / 2; ++k) {
        const double th = (k + 0.5) * h;
        const double c = 0.6407 * th;
        const double cot = std::cos(c) / std::sin(c);
        const std::complex<double> z =
            scale * std::complex<double>(-0.6122 + 0.5017 * th * cot, 0.2645 * th);
        const std::complex<double> dz =
            scale * std::complex<double>(0.5017 * (cot - c / (std::sin(c) * std::sin(c))), 0.2645);
        transform(z, std::span<std::complex<double>>(values));
        const std::complex<double> w = std::exp(z * t) * dz;
        for (int j = 0; j < count; ++j) acc[j] += (w * values[j]).imag();
    }
    for (double& v : acc) v *= h / std::numbers::pi;
    return acc;
}

/// Gaver-Stehfest weights V_1..V_N in 50-digit arithmetic.
inline std::vector<mp_real> stehfest_weights(int n) {
    const int half = n / 2;
    std::vector<mp_real> fact(2 * n + 1);
    fact[0] = 1;
    for (int i = 1; i <= 2 * n; ++i) fact[i] = fact[i - 1] * i;
    std::vector<mp_real> v(n + 1);
    for (int k = 1; k <= n; ++k) {
        mp_real sum = 0;
        for (int j = (k + 1) / 2; j <= std::min(k, half); ++j) {
            sum += boost::multiprecision::pow(mp_real(j), half) * fact[2 * j] /
                   (fact[half - j] * fact[j] * fact[j - 1] * fact[k - j] * fact[2 * j - k]);
        }
        v[k] = (k + half) % 2 == 0 ? sum : mp_real(-sum);
    }
    return v;
}

/// Gaver-Stehfest inversion with real nodes s_k = k ln2 / t, evaluated in
/// multiprecision.  transform(s, out) writes F_j(s) for j < out.size().
template <class Transform>
std::vector<double> stehfest_invert(Transform&& transform, int count, double t, int nodes) {
    spherehit::detail::require(t > 0.0, "inversion: t must be > 0");
    const auto weights = stehfest_weights(nodes);
    const mp_real ln2_t = boost::multiprecision::log(mp_real(2)) / mp_real(t);
    std::vector<mp_real> acc(count, mp_real(0)), values(count);
    for (int k = 1; k <= nodes; ++k) {
        transform(mp_real(k) * ln2_t, std::span<mp_real>(values));
        for (int j = 0; j < count; ++j) acc[j] += weights[k] * values[j];
    }
    std::vector<double> out(count);
    for (int j = 0; j < count; ++j) out[j] = static_cast<double>(acc[j] * ln2_t);
    return out;
}

}  // namespace spherehit::fpt
