#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "spherehit/jointdist/joint.hpp"
#include "spherehit/mcverify/estimate.hpp"
#include "spherehit/mcverify/philox.hpp"
#include "spherehit/verify/oracles.hpp"

using namespace spherehit;
using namespace spherehit::mcverify;

namespace {
JointQuery query(Geometry g, double t1, double t2, double lo, double hi) {
    JointQuery q;
    q.geometry = g;
    q.t1 = t1;
    q.t2 = t2;
    q.band = {lo, hi};
    return q;
}

McConfig config(std::int64_t n, std::uint64_t seed = 42) {
    McConfig c;
    c.n_paths = n;
    c.seed = seed;
    return c;
}
}  // namespace

TEST(Philox, KnownAnswerVectors) {
    const auto zero = philox4x32({0, 0, 0, 0}, {0, 0});
    EXPECT_EQ(zero[0], 0x6627e8d5u);
    EXPECT_EQ(zero[1], 0xe169c58du);
    EXPECT_EQ(zero[2], 0xbc57ac4cu);
    EXPECT_EQ(zero[3], 0x9b00dbd8u);
    const auto pi = philox4x32({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0});
    EXPECT_EQ(pi[0], 0xd16cfe09u);
    EXPECT_EQ(pi[1], 0x94fdccebu);
    EXPECT_EQ(pi[2], 0x5001e420u);
    EXPECT_EQ(pi[3], 0x24126ea1u);
}

TEST(Philox, NormalMoments) {
    PathRng rng(7, 3);
    double s1 = 0, s2 = 0, s4 = 0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double z = rng.normal();
        s1 += z;
        s2 += z * z;
        s4 += z * z * z * z;
    }
    EXPECT_NEAR(s1 / n, 0.0, 0.01);
    EXPECT_NEAR(s2 / n, 1.0, 0.015);
    EXPECT_NEAR(s4 / n, 3.0, 0.08);
}

TEST(Simulation, DeterministicAcrossThreadCounts) {
    const Geometry g{3, 1.0, 2.0};
    std::vector<JointQuery> qs = {query(g, 0.0, 5.0, 0.0, 1.0), query(g, 1.0, INFINITY, -1.0, 1.0)};
    auto c1 = config(9000, 11);
    c1.threads = 1;
    auto c3 = c1;
    c3.threads = 3;
    const auto a = estimate(qs, c1);
    const auto b = estimate(qs, c3);
    ASSERT_EQ(a.results.size(), b.results.size());
    for (std::size_t k = 0; k < a.results.size(); ++k) EXPECT_EQ(a.results[k].n_in_set, b.results[k].n_in_set);
    EXPECT_EQ(a.n_hit, b.n_hit);
    EXPECT_EQ(a.n_escape, b.n_escape);
}

TEST(Simulation, HitFrequencyMatchesHarmonicMeasure) {
    const Geometry g{5, 1.0, 2.0};
    const auto run = estimate({query(g, 0.0, INFINITY, -1.0, 1.0)}, config(20000));
    const auto& e = run.results.front();
    EXPECT_NEAR(e.estimate, 0.125, 4.0 * e.std_err + e.bias_bound);
    EXPECT_EQ(run.n_horizon, 0);
}

TEST(Simulation, InteriorPathsAlwaysHit) {
    const auto run = estimate({query({4, 1.0, 0.5}, 0.0, INFINITY, -1.0, 1.0)}, config(3000));
    EXPECT_EQ(run.n_hit, 3000);
    EXPECT_EQ(run.results.front().n_in_set, 3000);
}

TEST(Simulation, HitTimesFollowClosedFormLaw) {
    // d = 3 exterior: Kolmogorov-Smirnov against the closed-form cdf
    const Geometry g{3, 1.0, 1.5};
    const int n = 4000;
    const McConfig cfg = resolve(g, std::nullopt, config(n, 5), INFINITY);
    std::vector<double> times;
    for (int i = 0; i < n; ++i) {
        const auto s = simulate_hit(g, std::nullopt, cfg, static_cast<std::uint64_t>(i));
        if (s.hit) times.push_back(s.time);
    }
    std::sort(times.begin(), times.end());
    double ks = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i) {
        const double f = verify::half_cdf(g.a, g.r, times[i]);
        ks = std::max({ks, std::abs(f - static_cast<double>(i) / n), std::abs(f - static_cast<double>(i + 1) / n)});
    }
    EXPECT_LT(ks * std::sqrt(static_cast<double>(n)), 1.63);
}

TEST(Simulation, HitPlaceIsRotationallySymmetric) {
    const Geometry g{3, 1.0, 0.6};
    const int n = 8000, bins = 8;
    const McConfig cfg = resolve(g, std::nullopt, config(n, 9), INFINITY);
    std::vector<int> count(bins, 0);
    for (int i = 0; i < n; ++i) {
        const auto s = simulate_hit(g, std::nullopt, cfg, static_cast<std::uint64_t>(i));
        ASSERT_TRUE(s.hit);
        EXPECT_NEAR(s.place_x * s.place_x + s.place_y * s.place_y + s.place_z * s.place_z, 1.0, 1e-9);
        const double phi = std::atan2(s.place_z, s.place_y) + M_PI;
        ++count[std::min(bins - 1, static_cast<int>(phi / (2.0 * M_PI) * bins))];
    }
    double chi2 = 0.0;
    for (int c : count) chi2 += (c - n / double(bins)) * (c - n / double(bins)) / (n / double(bins));
    EXPECT_LT(chi2, 24.3);  // 7 dof, 0.1% level
}

TEST(Simulation, LaplaceFunctionalMatchesSeries) {
    const Geometry g{3, 1.0, 0.5};
    const auto mc = estimate_laplace_functional(g, std::nullopt, 1.0, 0.3, 0.2, config(20000));
    const double series = jointdist::joint_laplace(g, 1.0, 0.3, 0.2).value;
    EXPECT_NEAR(mc.estimate, series, 4.0 * mc.std_err + mc.bias_bound + 2e-3);
    EXPECT_EQ(mc.n_censored, 0);
}

TEST(Simulation, StepRefinementIsStable) {
    const Geometry g{3, 1.0, 0.5};
    const auto q = query(g, 0.05, 0.3, 0.5, 1.0);
    auto coarse = config(20000, 3);
    auto fine = coarse;
    fine.base_step *= 0.5;
    fine.boundary_fraction *= 0.5;
    const auto a = estimate({q}, coarse).results.front();
    const auto b = estimate({q}, fine).results.front();
    EXPECT_NEAR(a.estimate, b.estimate, 4.0 * std::hypot(a.std_err, b.std_err));
}

TEST(Simulation, DriftedExteriorUsesHorizon) {
    const Geometry g{3, 1.0, 2.0};
    JointQuery q = query(g, 0.0, 4.0, -1.0, 1.0);
    q.drift = jointdist::Drift{-0.5, 0.0};
    const auto run = estimate({q}, config(2000));
    EXPECT_EQ(run.config.time_horizon, 4.0);
    EXPECT_FALSE(std::isfinite(run.config.escape_radius));
    EXPECT_EQ(run.n_hit + run.n_escape + run.n_horizon, 2000);
}

TEST(Simulation, RejectsBadConfigurations) {
    const Geometry g{3, 1.0, 2.0};
    const auto q = query(g, 0.0, INFINITY, -1.0, 1.0);
    auto bad = config(1000);
    bad.boundary_fraction = 1.5;
    EXPECT_THROW(estimate({q}, bad), ConfigError);
    bad = config(1000);
    bad.min_step = 1.0;
    EXPECT_THROW(estimate({q}, bad), ConfigError);
    bad = config(1000000);
    bad.escape_radius = 50.0;  // escape bias 0.02 is far above the error budget
    EXPECT_THROW(estimate({q}, bad), ConfigError);
    bad = config(1000);
    bad.escape_radius = 1.5;
    EXPECT_THROW(estimate({q}, bad), ConfigError);
    EXPECT_THROW(estimate({query({2, 1.0, 2.0}, 0.0, INFINITY, -1.0, 1.0)}, config(100)), ConfigError);
    EXPECT_THROW(estimate({q, query({3, 1.0, 3.0}, 0.0, 1.0, -1.0, 1.0)}, config(100)), ConfigError);
    auto short_horizon = config(100);
    short_horizon.time_horizon = 1.0;
    EXPECT_THROW(estimate({query(g, 0.0, 2.0, -1.0, 1.0)}, short_horizon), ConfigError);
}
