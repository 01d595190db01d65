#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "spherehit/jointdist/drift.hpp"
#include "spherehit/specfun/quadrature.hpp"
#include "spherehit/specfun/sphere.hpp"
#include "spherehit/verify/checks.hpp"

using namespace spherehit;
using namespace spherehit::jointdist;

namespace {
const double kInf = std::numeric_limits<double>::infinity();

JointQuery query(Geometry g, Drift v, double t1, double t2, double lo, double hi) {
    JointQuery q;
    q.geometry = g;
    q.drift = v;
    q.t1 = t1;
    q.t2 = t2;
    q.band = {lo, hi};
    return q;
}
}  // namespace

TEST(Drift, CameronMartinIdentity) {
    const auto res = verify::check_cameron_martin(50, 99);
    EXPECT_TRUE(res.passed) << res.detail;
}

TEST(Drift, ZeroDriftReducesToDriftless) {
    const Geometry g{3, 1.0, 2.0};
    for (auto [t1, t2] : {std::pair{0.0, kInf}, std::pair{0.4, 3.0}}) {
        auto q = query(g, {0.0, 0.0}, t1, t2, -0.5, 0.7);
        const double drifted = drift_band_probability(q).value;
        q.drift.reset();
        EXPECT_NEAR(drifted, band_probability(q).value, 1e-12);
    }
}

TEST(Drift, InteriorHitsSurely) {
    const auto q = query({3, 1.0, 0.5}, {1.0, 0.5}, 0.0, kInf, -1.0, 1.0);
    EXPECT_NEAR(drift_band_probability(q).value, 1.0, 1e-11);
    const double upper = drift_band_probability(query({3, 1.0, 0.5}, {1.0, 0.5}, 0.0, kInf, 0.0, 1.0)).value;
    const double lower = drift_band_probability(query({3, 1.0, 0.5}, {1.0, 0.5}, 0.0, kInf, -1.0, 0.0)).value;
    EXPECT_NEAR(upper + lower, 1.0, 1e-11);
    EXPECT_GT(upper, 0.9);
}

TEST(Drift, TailRoutesAgree) {
    // shifted tail inversion vs quadrature of the exponentially weighted density
    const auto q = query({3, 1.0, 2.0}, {0.4, 0.3}, 2.0, kInf, -0.3, 1.0);
    EXPECT_NEAR(drift_tail_probability(q).value, drift_band_probability(q).value, 1e-10);
}

TEST(Drift, DensityIntegratesToWindowProbability) {
    const Geometry g{3, 1.0, 0.6};
    const Drift v{0.7, 0.4};
    auto over_x = [&](double t) {
        auto f = [&](double th) {
            return drift_joint_density(g, v, t, std::cos(th)).averaged(3) * 0.5 * std::sin(th);
        };
        return specfun::adaptive_gauss_legendre(f, 0.0, M_PI, 1e-10);
    };
    const double integral = specfun::adaptive_gauss_legendre(over_x, 0.2, 0.6, 1e-9);
    EXPECT_NEAR(integral, drift_band_probability(query(g, v, 0.2, 0.6, -1, 1)).value, 1e-7);
}

TEST(Drift, TailApproachesLeadingOrder) {
    const Geometry g{3, 1.0, 2.0};
    const Drift v{0.6, 0.8};
    const double s = 1.0 / v.speed_sq();
    double prev = INFINITY;
    for (double t : {40.0 * s, 400.0 * s}) {
        const auto q = query(g, v, t, kInf, -1.0, 1.0);
        const double scaled = drift_tail_probability_scaled(q).value;
        const double lead = drift_tail_asymptotic(q) * std::exp(0.5 * v.speed_sq() * t);
        const double ratio = scaled / lead;
        EXPECT_GT(ratio, 0.7);
        EXPECT_LT(ratio, 1.3);
        EXPECT_LT(std::abs(ratio - 1.0), prev);
        prev = std::abs(ratio - 1.0);
    }
}

TEST(Drift, BandTiltIntegral) {
    // d = 3 full sphere: sinh(r|v|)/(r|v|)
    const Geometry g{3, 1.5, 3.0};
    const Drift v{0.3, 0.4};
    EXPECT_NEAR(band_tilt_integral(g, v, {}), std::sinh(0.75) / 0.75, 1e-12);
}
