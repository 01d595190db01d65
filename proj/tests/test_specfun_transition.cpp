#include <gtest/gtest.h>

#include <cmath>

#include "spherehit/specfun/quadrature.hpp"
#include "spherehit/specfun/transition.hpp"

using namespace spherehit::specfun;

TEST(Transition, CircleMatchesWrappedNormal) {
    // d = 2: angle is Brownian motion on the circle; x = cos(angle)
    const double t = 0.4, th1 = 0.9, th2 = 2.1;
    auto wrapped = [&](double d) {
        double s = 0.0;
        for (int k = -20; k <= 20; ++k) {
            const double z = d + 2.0 * M_PI * k;
            s += std::exp(-z * z / (2.0 * t)) / std::sqrt(2.0 * M_PI * t);
        }
        return s;
    };
    const double ref = 0.5 * (wrapped(th2 - th1) + wrapped(-th2 - th1));
    EXPECT_NEAR(projected_transition_density(2, t, std::cos(th1), std::cos(th2)), ref, 1e-12);
}

TEST(Transition, IntegratesToOneAgainstSpeedMeasure) {
    for (int d : {3, 4, 6})
        for (double t : {0.05, 0.5, 3.0}) {
            auto f = [&](double th) {
                const double y = std::cos(th);
                return projected_transition_density(d, t, 0.3, y) * speed_measure_density(d, y) * std::sin(th);
            };
            EXPECT_NEAR(adaptive_gauss_legendre(f, 0.0, M_PI, 1e-12), 1.0, 1e-9) << d << " " << t;
        }
}

TEST(Transition, SymmetricAndPositive) {
    for (int d : {2, 3, 5}) {
        const double p = projected_transition_density(d, 0.2, -0.4, 0.65);
        EXPECT_GT(p, 0.0);
        EXPECT_NEAR(p, projected_transition_density(d, 0.2, 0.65, -0.4), 1e-13);
    }
}

TEST(Transition, ConvergesToStationaryDensity) {
    // uniform on the sphere: density of y against dm is 1/int dm
    for (int d : {3, 5}) {
        const double total = adaptive_gauss_legendre(
            [&](double th) { return speed_measure_density(d, std::cos(th)) * std::sin(th); }, 0.0, M_PI, 1e-13);
        EXPECT_NEAR(projected_transition_density(d, 40.0, 0.9, -0.2), 1.0 / total, 1e-10);
    }
}

TEST(Transition, ReportsTruncation) {
    EXPECT_THROW(projected_transition_density_series(3, 1e-3, 0.1, 0.2, {50, 1e-12}), spherehit::TruncationError);
    const auto r = projected_transition_density_series(3, 1e-3, 0.1, 0.2);
    EXPECT_LT(r.residual_bound, 1e-12);
    EXPECT_GT(r.terms, 50);
}
