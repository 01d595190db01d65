#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "spherehit/specfun/polynomials.hpp"
#include "spherehit/specfun/quadrature.hpp"
#include "spherehit/specfun/series.hpp"

using namespace spherehit::specfun;

TEST(Polynomials, ChebyshevMatchesTrigonometricForm) {
    for (int n = 0; n <= 100; ++n)
        for (double x : {-1.0, -0.83, -0.2, 0.0, 0.41, 0.999, 1.0})
            EXPECT_NEAR(chebyshev_t(n, x), std::cos(n * std::acos(x)), 1e-13) << n << " " << x;
}

TEST(Polynomials, GegenbauerMatchesReference) {
    // mpmath
    EXPECT_NEAR(gegenbauer(5, 1.5, 0.3), 2.0217487500000001, 1e-14);
    EXPECT_NEAR(gegenbauer(20, 0.5, -0.7), -0.20457394463834165, 1e-14);
    EXPECT_NEAR(gegenbauer(3, 2.5, 0.9), 22.522500000000002, 1e-12);
    EXPECT_NEAR(gegenbauer(40, 1.0, 0.123), 0.33928025841243831, 1e-13);
}

TEST(Polynomials, ValueAtOne) {
    for (double nu : {0.5, 1.0, 2.5})
        for (int n : {0, 1, 7, 30}) EXPECT_NEAR(gegenbauer(n, nu, 1.0) / gegenbauer_at_one(n, nu), 1.0, 1e-12);
    EXPECT_DOUBLE_EQ(zonal_at_one(2, 17), 1.0);
    EXPECT_NEAR(zonal_at_one(5, 4), gegenbauer_at_one(4, 1.5), 1e-12);
}

TEST(Polynomials, GrowthConstantBoundsValuesAtOne) {
    for (double nu : {0.5, 1.5, 3.0}) {
        const double c = gegenbauer_growth_constant(nu, 200);
        for (int n = 1; n <= 200; ++n)
            EXPECT_LE(gegenbauer_at_one(n, nu), c * std::pow(n, 2.0 * nu - 1.0) * (1.0 + 1e-12));
    }
}

TEST(Polynomials, ZonalValuesAreOrthogonal) {
    for (int d : {2, 3, 5}) {
        for (int m = 0; m < 6; ++m)
            for (int n = 0; n < 6; ++n) {
                auto f = [&](double theta) {
                    const auto p = zonal_values(d, std::cos(theta), 6);
                    return p[m] * p[n] * std::pow(std::sin(theta), d - 2);
                };
                const double ip = adaptive_gauss_legendre(f, 0.0, M_PI, 1e-13);
                if (m != n)
                    EXPECT_NEAR(ip, 0.0, 1e-12) << d << " " << m << " " << n;
                else
                    EXPECT_GT(ip, 0.0);
            }
    }
}

TEST(Polynomials, ZonalValuesMatchScalarRecurrences) {
    const auto p2 = zonal_values(2, 0.37, 12);
    const auto p4 = zonal_values(4, 0.37, 12);
    for (int n = 0; n < 12; ++n) {
        EXPECT_NEAR(p2[n], chebyshev_t(n, 0.37), 1e-14);
        EXPECT_NEAR(p4[n], gegenbauer(n, 1.0, 0.37), 1e-13);
    }
}

TEST(Series, ZonalWeightRatioIsConsistent) {
    for (int d : {3, 4, 7}) {
        const double nu = 0.5 * (d - 2);
        for (int m = 1; m < 20; ++m) {
            const double w0 = (m + nu) / nu * gegenbauer_at_one(m, nu);
            const double w1 = (m + 1 + nu) / nu * gegenbauer_at_one(m + 1, nu);
            EXPECT_NEAR(zonal_weight_ratio(d, m), w1 / w0, 1e-12);
            EXPECT_LE(zonal_weight_ratio(d, m + 1), zonal_weight_ratio(d, m) + 1e-15);
        }
    }
}

TEST(Series, CompensatedSumRecoversCancellation) {
    CompensatedSum s;
    s.add(1e16);
    s.add(1.0);
    s.add(-1e16);
    EXPECT_DOUBLE_EQ(s.value(), 1.0);
    EXPECT_EQ(geometric_tail(0.5, 0.5), 1.0);
    EXPECT_TRUE(std::isinf(geometric_tail(1.0, 1.0)));
}

TEST(Quadrature, GaussLegendreIntegratesPolynomialsExactly) {
    const auto& gl = gauss_legendre_20();
    EXPECT_NEAR(gl.integrate([](double x) { return std::pow(x, 38); }, -1.0, 1.0), 2.0 / 39.0, 1e-15);
    EXPECT_NEAR(adaptive_gauss_legendre([](double x) { return std::exp(-x * x); }, -8.0, 8.0, 1e-14),
                std::sqrt(M_PI), 1e-13);
}
