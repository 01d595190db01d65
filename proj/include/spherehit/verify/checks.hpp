// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "spherehit/fpt/first_passage.hpp"
#include "spherehit/jointdist/drift.hpp"
#include "spherehit/jointdist/joint.hpp"
#include "spherehit/jointdist/probability.hpp"
#include "spherehit/mcverify/estimate.hpp"
#include "spherehit/specfun/quadrature.hpp"
#include "spherehit/verify/oracles.hpp"

namespace spherehit::verify {

struct CheckResult {
    std::string name;
    bool passed = false;
    double metric = 0.0;   // worst deviation, ratio, or count, per check
    double seconds = 0.0;
    double budget = 0.0;   // runtime budget in seconds
    std::string detail;
};

namespace detail {

template <class... Args>
std::string format(const char* fmt, Args... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, fmt, args...);
    return buf;
}

template <class Body>
CheckResult timed(const char* name, double budget, Body body) {
    CheckResult res;
    res.name = name;
    res.budget = budget;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(res);
    } catch (const std::exception& e) {
        res.passed = false;
        res.detail = std::string("exception: ") + e.what();
    }
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (res.seconds > budget) {
        res.passed = false;
        res.detail += format(" (runtime %.1fs over budget %.0fs)", res.seconds, budget);
    }
    return res;
}

inline bool approaches_one(const std::vector<double>& ratios) {
    for (std::size_t i = 1; i < ratios.size(); ++i)
        if (std::abs(ratios[i] - 1.0) >= std::abs(ratios[i - 1] - 1.0)) return false;
    return true;
}

inline std::string join(const std::vector<double>& v) {
    std::string s;
    for (double x : v) s += (s.empty() ? "" : ", ") + format("%.6f", x);
    return s;
}

}  // namespace detail

using fpt::Geometry;
using jointdist::Drift;
using jointdist::JointQuery;

/// Series Poisson kernel vs closed form at random (d, a/r, x).
inline CheckResult check_poisson_kernel(int draws = 100, std::uint64_t seed = 20240901) {
    return detail::timed("poisson-kernel", 10.0, [&](CheckResult& res) {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        const int dims[] = {2, 3, 4, 5, 7};
        double worst = 0.0;
        for (int i = 0; i < draws; ++i) {
            const int d = dims[rng() % 5];
            const double q = unit(rng) < 0.5 ? 0.95 * unit(rng) : 1.05 + 3.95 * unit(rng);
            const double r = 0.5 + 1.5 * unit(rng);
            const double x = -1.0 + 2.0 * unit(rng);
            const Geometry g{d, r, std::max(q, 1e-3) * r};
            const double dev = std::abs(jointdist::hitting_place_density(g, x).value - poisson_kernel(d, g.a, r, x));
            worst = std::max(worst, dev);
        }
        res.metric = worst;
        res.passed = worst <= 1e-8;
        res.detail = detail::format("max abs deviation %.3e over %d draws", worst, draws);
    });
}

/// joint_laplace with u = 0 vs the first-passage transform.
inline CheckResult check_u0_collapse() {
    return detail::timed("u0-collapse", 5.0, [&](CheckResult& res) {
        const int dims[] = {2, 3, 4, 5, 7};
        const double ratios[] = {0.2, 0.7, 0.95, 1.5, 4.0};
        const double lambdas[] = {0.05, 0.3, 1.0, 4.0, 20.0};
        double worst = 0.0;
        for (int d : dims)
            for (double q : ratios)
                for (double lambda : lambdas) {
                    const Geometry g{d, 1.0, q};
                    const double lhs = jointdist::joint_laplace(g, lambda, 0.0, 0.0).value;
                    worst = std::max(worst, std::abs(lhs - fpt::fpt_laplace(g.nu(), g.a, g.r, lambda)));
                }
        res.metric = worst;
        res.passed = worst <= 1e-10;
        res.detail = detail::format("max abs deviation %.3e over 125 points", worst);
    });
}

/// nu = 1/2 density, CDF and tail vs closed forms.
inline CheckResult check_golden_half() {
    return detail::timed("golden-half", 5.0, [&](CheckResult& res) {
        const double radii[] = {0.5, 1.0, 3.0, 10.0};
        const double ratios[] = {1.1, 1.5, 2.0, 3.0, 5.0};
        double worst = 0.0;
        int points = 0;
        for (double r : radii)
            for (double q : ratios)
                for (int k = 0; k < 10; ++k) {
                    const double a = q * r;
                    const double h = a - r;
                    const double t = h * h * std::pow(10.0, -1.3 + 0.45 * k);
                    const double dens = half_density(a, r, t);
                    if (dens <= 1e-12) continue;
                    ++points;
                    const double e1 = std::abs(fpt::fpt_density(0.5, a, r, t) / dens - 1.0);
                    const double e2 = std::abs(fpt::fpt_cdf(0.5, a, r, t) / half_cdf(a, r, t) - 1.0);
                    const double e3 = std::abs(fpt::fpt_tail(0.5, a, r, t) / half_tail(a, r, t) - 1.0);
                    worst = std::max({worst, e1, e2, e3});
                }
        res.metric = worst;
        res.passed = worst <= 1e-8 && points > 0;
        res.detail = detail::format("max rel error %.3e over %d points", worst, points);
    });
}

/// Transform of the inverted density by quadrature vs the Bessel ratio.
inline CheckResult check_laplace_roundtrip() {
    return detail::timed("laplace-roundtrip", 30.0, [&](CheckResult& res) {
        const double orders[] = {0.0, 0.5, 1.0, 1.5, 3.0};
        const double starts[] = {0.5, 2.0};
        const double lambdas[] = {0.25, 1.0, 4.0};
        double worst = 0.0;
        for (double nu : orders)
            for (double a : starts)
                for (double lambda : lambdas) {
                    const double r = 1.0;
                    const double h = std::abs(a - r);
                    auto f = [&](double t) { return std::exp(-lambda * t) * fpt::fpt_density(nu, a, r, t); };
                    const double t_end = 40.0 / lambda;
                    double lo = h * h / 80.0, step = lo, total = 0.0;
                    while (lo < t_end) {
                        const double hi = std::min(t_end, lo + step);
                        total += specfun::adaptive_gauss_legendre(f, lo, hi, 1e-12, 1e-10);
                        lo = hi;
                        step *= 2.0;
                    }
                    const double exact = fpt::fpt_laplace(nu, a, r, lambda);
                    worst = std::max(worst, std::abs(total / exact - 1.0));
                }
        res.metric = worst;
        res.passed = worst <= 1e-6;
        res.detail = detail::format("max rel error %.3e over 30 transforms", worst);
    });
}

/// fpt_tail below the uniform-in-a bound r^{2nu}/(2^nu Gamma(nu+1) t^nu).
inline CheckResult check_tail_bound() {
    return detail::timed("tail-bound", 30.0, [&](CheckResult& res) {
        const double orders[] = {0.5, 1.0, 1.5, 2.5, 4.0};
        const double ratios[] = {1.05, 1.5, 2.0, 4.0};
        const double radii[] = {0.5, 2.0};
        const double times[] = {0.01, 0.1, 1.0, 10.0, 100.0};
        int violations = 0, points = 0;
        double worst = 0.0;
        for (double nu : orders)
            for (double q : ratios)
                for (double r : radii)
                    for (double s : times) {
                        const double t = s * r * r;
                        const double tail = fpt::fpt_tail(nu, q * r, r, t);
                        const double bound = fpt::fpt_tail_bound(nu, r, t);
                        ++points;
                        worst = std::max(worst, tail / bound);
                        if (tail > bound) ++violations;
                    }
        res.metric = violations;
        res.passed = violations == 0;
        res.detail = detail::format("%d violations over %d points, max tail/bound %.4f", violations, points, worst);
    });
}

/// Tail probabilities against their leading-order asymptotics.
inline CheckResult check_tail_asymptotics() {
    return detail::timed("tail-asymptotics", 120.0, [&](CheckResult& res) {
        const jointdist::Band bands[] = {{-1.0, 1.0}, {0.0, 1.0}};
        bool ok = true;
        double worst = 0.0;
        std::string detail;
        auto ratio_at = [](const Geometry& g, const jointdist::Band& band, double t) {
            JointQuery q;
            q.geometry = g;
            q.band = band;
            q.t1 = t;
            return jointdist::tail_probability(q).total.value / jointdist::tail_asymptotic(q);
        };
        for (const Geometry g : {Geometry{3, 1.0, 2.0}, Geometry{5, 1.0, 3.0}})
            for (const auto& band : bands) {
                const double h2 = (g.a - g.r) * (g.a - g.r);
                std::vector<double> ratios;
                for (double s : {1e2, 1e3, 1e4}) ratios.push_back(ratio_at(g, band, s * h2));
                const bool pass = ratios[0] >= 0.85 && ratios[0] <= 1.15 && detail::approaches_one(ratios);
                ok = ok && pass;
                worst = std::max(worst, std::abs(ratios[0] - 1.0));
                detail += detail::format("d=%d a=%g band=[%g,%g]: ", g.d, g.a, band.x_lo, band.x_hi) +
                          detail::join(ratios) + (pass ? "; " : " FAIL; ");
            }
        const Geometry g2{2, 1.0, 2.0};
        for (const auto& band : bands) {
            std::vector<double> ratios;
            for (double t : {1e6, 1e9, 1e12}) ratios.push_back(ratio_at(g2, band, t));
            const bool pass = ratios[0] >= 0.5 && ratios[0] <= 1.5 && detail::approaches_one(ratios);
            ok = ok && pass;
            detail += detail::format("d=2 band=[%g,%g]: ", band.x_lo, band.x_hi) + detail::join(ratios) +
                      (pass ? "; " : " FAIL; ");
        }
        res.metric = worst;
        res.passed = ok;
        res.detail = detail;
    });
}

/// One Monte Carlo comparison: query, series value, estimate.
struct McComparison {
    JointQuery query;
    double series = 0.0;
    mcverify::McEstimate mc;
    double z = 0.0;
};

/// The canonical query set, grouped by shared geometry and drift.
inline std::vector<std::vector<JointQuery>> canonical_mc_queries() {
    const double inf = std::numeric_limits<double>::infinity();
    auto q = [](Geometry g, std::optional<Drift> v, double t1, double t2, double lo, double hi) {
        JointQuery out;
        out.geometry = g;
        out.drift = v;
        out.t1 = t1;
        out.t2 = t2;
        out.band = {lo, hi};
        return out;
    };
    const Geometry in3{3, 1.0, 0.5}, ex3{3, 1.0, 2.0}, ex5{5, 1.0, 2.0}, in2{2, 1.0, 0.5}, ex2{2, 1.0, 2.0};
    const Drift v1{1.0, 0.5}, v2{-0.5, 0.3};
    return {
        {q(in3, {}, 0, inf, 0, 1), q(in3, {}, 0.05, 0.2, -1, 1)},
        {q(ex3, {}, 0.2, 1.0, 0.5, 1), q(ex3, {}, 5.0, inf, -1, 0)},
        {q(ex5, {}, 0, inf, -1, 1), q(ex5, {}, 0.5, 3.0, 0, 1)},
        {q(in2, {}, 0, inf, -1, -0.5), q(in2, {}, 0.1, 0.5, 0, 1)},
        {q(ex2, {}, 0, 2.0, 0.5, 1), q(ex2, {}, 1.0, 5.0, -1, 1)},
        {q(in3, v1, 0, inf, 0, 1)},
        {q(ex5, v2, 0, 3.0, -1, 1)},
    };
}

/// Series value of a query: drifted or driftless band probability.
inline jointdist::SeriesResult series_probability(const JointQuery& q) {
    return q.drift ? jointdist::drift_band_probability(q) : jointdist::band_probability(q);
}

inline std::vector<McComparison> run_mc_comparisons(std::int64_t n_paths, std::uint64_t seed) {
    std::vector<McComparison> out;
    mcverify::McConfig cfg;
    cfg.n_paths = n_paths;
    cfg.seed = seed;
    for (const auto& group : canonical_mc_queries()) {
        const auto run = mcverify::estimate(group, cfg);
        for (std::size_t k = 0; k < group.size(); ++k) {
            McComparison c;
            c.query = group[k];
            c.series = series_probability(group[k]).value;
            c.mc = run.results[k];
            c.z = c.mc.std_err > 0.0 ? (c.mc.estimate - c.series) / c.mc.std_err
                                     : (c.mc.estimate == c.series ? 0.0 : std::numeric_limits<double>::infinity());
            out.push_back(c);
        }
    }
    return out;
}

/// Series values vs Monte Carlo on the canonical queries.
inline CheckResult check_mc_agreement(std::int64_t n_paths = 1000000, std::uint64_t seed = 42) {
    return detail::timed("monte-carlo", 600.0, [&](CheckResult& res) {
        const auto cmp = run_mc_comparisons(n_paths, seed);
        int within = 0;
        double worst = 0.0;
        for (const auto& c : cmp) {
            if (std::abs(c.z) <= 3.0) ++within;
            worst = std::max(worst, std::abs(c.z));
        }
        const int n = static_cast<int>(cmp.size());
        res.metric = within;
        res.passed = within >= n - 1;
        res.detail = detail::format("%d of %d within 3 standard errors, max |z| %.2f", within, n, worst);
    });
}

/// drift_joint_laplace against the tilted driftless transform, with the
/// perpendicular parts of u and v at a random angle.
inline CheckResult check_cameron_martin(int draws = 50, std::uint64_t seed = 1234567) {
    return detail::timed("cameron-martin", 5.0, [&](CheckResult& res) {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        const int dims[] = {2, 3, 4, 5, 7};
        double worst = 0.0;
        for (int i = 0; i < draws; ++i) {
            const int d = dims[rng() % 5];
            const double r = 0.5 + 1.5 * unit(rng);
            const double q = unit(rng) < 0.5 ? 0.1 + 0.8 * unit(rng) : 1.2 + 2.8 * unit(rng);
            const Geometry g{d, r, q * r};
            const double lambda = 0.1 + 4.9 * unit(rng);
            const double u1 = -1.0 + 2.0 * unit(rng), u_perp = unit(rng);
            const Drift v{-1.0 + 2.0 * unit(rng), unit(rng)};
            const double gamma = d == 2 ? (rng() % 2 ? std::numbers::pi : 0.0) : std::numbers::pi * unit(rng);
            // u + v in coordinates (axis, v_perp direction, orthogonal)
            const double w2 = u_perp * std::cos(gamma) + v.v_perp;
            const double w3 = u_perp * std::sin(gamma);
            const double lhs = jointdist::drift_joint_laplace(g, v, lambda, u1, u_perp, {}, gamma).value;
            const double rhs = std::exp(-g.a * v.v1) *
                               jointdist::joint_laplace(g, lambda + 0.5 * v.speed_sq(), u1 + v.v1, std::hypot(w2, w3))
                                   .value;
            worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
        }
        res.metric = worst;
        res.passed = worst <= 1e-10;
        res.detail = detail::format("max deviation %.3e over %d draws", worst, draws);
    });
}

/// t^{nu+1} e^{|v|^2 t/2} H(t) / (2 L(nu)/|v|^2) at t = 40/|v|^2 and 400/|v|^2.
inline CheckResult check_h_exp_tail() {
    return detail::timed("h-exp-tail", 60.0, [&](CheckResult& res) {
        struct Case {
            int d;
            double a, r, speed;
        };
        bool ok = true;
        double worst = 0.0;
        std::string detail;
        for (const Case c : {Case{3, 2.0, 1.0, 1.0}, Case{4, 2.0, 1.0, 0.5}}) {
            const double nu = 0.5 * (c.d - 2);
            const double lead = 2.0 * fpt::l_const(nu, c.a, c.r) / (c.speed * c.speed);
            std::vector<double> ratios;
            for (double s : {40.0, 400.0}) {
                const double t = s / (c.speed * c.speed);
                ratios.push_back(std::pow(t, nu + 1.0) * fpt::h_exp_tail_scaled(nu, c.a, c.r, c.speed, t) / lead);
            }
            const bool pass = ratios[0] >= 0.8 && ratios[0] <= 1.2 && detail::approaches_one(ratios);
            ok = ok && pass;
            worst = std::max(worst, std::abs(ratios[0] - 1.0));
            detail += detail::format("d=%d |v|=%g: ", c.d, c.speed) + detail::join(ratios) + (pass ? "; " : " FAIL; ");
        }
        res.metric = worst;
        res.passed = ok;
        res.detail = detail;
    });
}

struct Suite {
    std::string name;
    int criterion;
    std::function<CheckResult()> run;
};

/// All acceptance checks, in criterion order.
inline std::vector<Suite> suites(std::int64_t mc_paths = 1000000, std::uint64_t mc_seed = 42) {
    return {
        {"poisson-kernel", 1, [] { return check_poisson_kernel(); }},
        {"u0-collapse", 2, [] { return check_u0_collapse(); }},
        {"golden-half", 3, [] { return check_golden_half(); }},
        {"laplace-roundtrip", 4, [] { return check_laplace_roundtrip(); }},
        {"tail-bound", 5, [] { return check_tail_bound(); }},
        {"tail-asymptotics", 6, [] { return check_tail_asymptotics(); }},
        {"monte-carlo", 7, [=] { return check_mc_agreement(mc_paths, mc_seed); }},
        {"cameron-martin", 8, [] { return check_cameron_martin(); }},
        {"h-exp-tail", 9, [] { return check_h_exp_tail(); }},
    };
}

}  // namespace spherehit::verify
