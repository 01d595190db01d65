#include <gtest/gtest.h>

#include <cmath>

#include "spherehit/specfun/quadrature.hpp"
#include "spherehit/specfun/sphere.hpp"

using namespace spherehit::specfun;

TEST(Sphere, BandMeasureClosedForms) {
    EXPECT_NEAR(band_measure(3, {0.2, 0.7}), 0.25, 1e-15);
    EXPECT_NEAR(band_measure(2, {-0.5, 0.5}), (std::acos(-0.5) - std::acos(0.5)) / M_PI, 1e-15);
    // d = 4: w = (2/pi) sqrt(1 - x^2)
    const double x = 0.3;
    const double f = (x * std::sqrt(1 - x * x) + std::asin(x)) / M_PI;
    EXPECT_NEAR(band_measure(4, {-1.0, x}), 0.5 + f, 1e-14);
    for (int d : {2, 3, 5, 8}) {
        EXPECT_DOUBLE_EQ(band_measure(d, {-1.0, 1.0}), 1.0);
        EXPECT_DOUBLE_EQ(band_measure(d, {0.4, 0.4}), 0.0);
        EXPECT_NEAR(band_measure(d, {-1.0, 0.0}), 0.5, 1e-14);
    }
}

TEST(Sphere, ZonalWeightIsNormalized) {
    for (int d : {3, 4, 6, 9}) {
        const double total = adaptive_gauss_legendre([&](double x) { return zonal_weight(d, x); }, -1.0, 1.0, 1e-13);
        EXPECT_NEAR(total, 1.0, 1e-11) << d;
    }
}

TEST(Sphere, PolyBandIntegralsMatchQuadrature) {
    const Band band{-0.35, 0.8};
    for (int d : {2, 3, 4, 7}) {
        const auto exact = poly_band_integrals(d, 25, band);
        for (int n = 0; n < 25; ++n) {
            auto f = [&](double th) {
                const auto p = zonal_values(d, std::cos(th), n + 1);
                return zonal_weight_constant(d) * std::pow(std::sin(th), d - 2) * p[n];
            };
            const double q = adaptive_gauss_legendre(f, std::acos(band.x_hi), std::acos(band.x_lo), 1e-14);
            EXPECT_NEAR(exact[n], q, 1e-12) << "d=" << d << " n=" << n;
        }
    }
}

TEST(Sphere, FullBandKillsNonConstantModes) {
    const auto v = poly_band_integrals(5, 10, Band{});
    EXPECT_DOUBLE_EQ(v[0], 1.0);
    for (int n = 1; n < 10; ++n) EXPECT_EQ(v[n], 0.0);
}

TEST(Sphere, ExponentialAverages) {
    // average of e^{<w, xi>} over S^2 is sinh(rho)/rho
    for (double rho : {0.1, 2.0, 45.0}) EXPECT_NEAR(sphere_exp_average(3, rho) / (std::sinh(rho) / rho), 1.0, 1e-13);
    EXPECT_NEAR(sphere_exp_average(1, 1.5), std::cosh(1.5), 1e-14);
    EXPECT_NEAR(sphere_exp_average(2, 3.0), std::cyl_bessel_i(0.0, 3.0), 1e-12);
    EXPECT_NEAR(exp_poly_band_integral(3, 0, Band{}, 1.1, 0.0), std::sinh(1.1) / 1.1, 1e-12);
    EXPECT_NEAR(exp_poly_band_integral(3, 0, Band{}, 0.6, 0.8), std::sinh(1.0), 1e-12);
}

TEST(Sphere, ExpPolyBandIntegralsReduceWithoutTilt) {
    const Band band{0.1, 0.9};
    const auto a = exp_poly_band_integrals(4, 8, band, 0.0, 0.0);
    const auto b = poly_band_integrals(4, 8, band);
    for (int n = 0; n < 8; ++n) EXPECT_DOUBLE_EQ(a[n], b[n]);
}

TEST(Sphere, ExpPolyBandIntegralAgainstTwoDimensionalQuadrature) {
    // d = 3: (1/4pi) int int e^{c1 cos th + cp sin th cos ph} P_2(cos th) sin th dph dth
    const double c1 = 0.7, cp = 1.3;
    const Band band{-0.2, 0.6};
    auto inner = [&](double th) {
        auto g = [&](double ph) { return std::exp(c1 * std::cos(th) + cp * std::sin(th) * std::cos(ph)); };
        const double x = std::cos(th);
        return adaptive_gauss_legendre(g, 0.0, 2.0 * M_PI, 1e-14) * 0.5 * (3 * x * x - 1) * std::sin(th) /
               (4.0 * M_PI);
    };
    const double ref = adaptive_gauss_legendre(inner, std::acos(band.x_hi), std::acos(band.x_lo), 1e-13);
    EXPECT_NEAR(exp_poly_band_integral(3, 2, band, c1, cp), ref, 1e-11);
}

TEST(Sphere, RejectsBadBands) {
    EXPECT_THROW(band_measure(3, {0.5, 0.2}), spherehit::DomainError);
    EXPECT_THROW(band_measure(3, {-1.5, 0.2}), spherehit::DomainError);
    EXPECT_THROW(band_measure(1, {}), spherehit::DomainError);
}
