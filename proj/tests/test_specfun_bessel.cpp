#include <gtest/gtest.h>

#include <cmath>
#include <complex>

#include "spherehit/specfun/bessel.hpp"

using namespace spherehit::specfun;

namespace {

struct RealCase {
    double nu, x, i, k;
};

// mpmath, 30 digits
const RealCase kReal[] = {
    {0.0, 0.1, 1.0025015629340956, 2.4270690247020166},
    {0.5, 1.0, 0.93767488824548765, 0.46106850444789456},
    {2.3, 7.5, 184.07403454528093, 0.00034661604695874043},
    {10.0, 3.0, 1.9464393470612969e-5, 2459.6204220569468},
    {40.5, 20.0, 6.3402213483755775e-8, 174585.48845274726},
    {0.3, 50.0, 2.9298887214511478e+20, 3.413208199536853e-23},
};

void expect_rel(double got, double want, double tol) { EXPECT_NEAR(got / want, 1.0, tol) << got << " vs " << want; }

void expect_rel(std::complex<double> got, std::complex<double> want, double tol) {
    EXPECT_LE(std::abs(got - want), tol * std::abs(want)) << got << " vs " << want;
}

}  // namespace

TEST(Bessel, RealValuesMatchReference) {
    for (const auto& c : kReal) {
        expect_rel(bessel_i(c.nu, c.x), c.i, 1e-13);
        expect_rel(bessel_k(c.nu, c.x), c.k, 1e-13);
    }
}

TEST(Bessel, ScaledValuesAtLargeArgument) {
    expect_rel(bessel_i(0.0, 700.0, true), 0.015081295651531358, 1e-13);
    expect_rel(bessel_k(0.0, 700.0, true), 0.047362369454613572, 1e-13);
    expect_rel(bessel_i(3.5, 400.0, true), 0.019649772676605093, 1e-13);
    expect_rel(bessel_k(3.5, 400.0, true), 0.063611582066055351, 1e-13);
}

TEST(Bessel, ComplexValuesMatchReference) {
    using C = std::complex<double>;
    expect_rel(bessel_k(0.3, C(3, 4)), C(-0.0071078398999344356, 0.026703258636357763), 1e-12);
    expect_rel(bessel_i(7.2, C(0.1, 20)), C(-0.052905154148765337, 0.17321208616666686), 1e-12);
    expect_rel(bessel_k(2.5, C(0.05, 0.2)), C(-193.03291443005549, 34.394383038219494), 1e-12);
    expect_rel(bessel_i(1.5, C(2, -0.5)), C(0.9636942360388318, -0.58933716617925229), 1e-12);
    expect_rel(bessel_k(0.0, C(1e-3, 1e-3)), C(6.6771135970591475, -0.78539432484079704), 1e-12);
    expect_rel(bessel_i(12.0, C(30, 25)), C(124485190058.34482, 106726754791.18735), 1e-12);
}

TEST(Bessel, HalfIntegerClosedForms) {
    for (double x : {0.01, 0.7, 3.0, 25.0}) {
        expect_rel(bessel_i(0.5, x), std::sqrt(2.0 / (M_PI * x)) * std::sinh(x), 1e-13);
        expect_rel(bessel_k(0.5, x), std::sqrt(M_PI / (2.0 * x)) * std::exp(-x), 1e-13);
        expect_rel(bessel_k(1.5, x), std::sqrt(M_PI / (2.0 * x)) * std::exp(-x) * (1.0 + 1.0 / x), 1e-13);
    }
}

TEST(Bessel, WronskianOnLadder) {
    // I_nu K_{nu+1} + I_{nu+1} K_nu = 1/x
    for (double x : {0.05, 1.3, 9.0, 60.0}) {
        const auto lad = bessel_ik_ladder<double>(0.25, 30, x, true);
        for (int n = 0; n + 1 < 30; ++n) {
            const double w = lad.i[n].value() * lad.k[n + 1].value() + lad.i[n + 1].value() * lad.k[n].value();
            if (std::isfinite(w)) EXPECT_NEAR(w * x, 1.0, 1e-12) << "x=" << x << " n=" << n;
        }
    }
}

TEST(Bessel, LadderRatiosStayFiniteWhereValuesOverflow) {
    const auto lad = bessel_ik_ladder<double>(0.5, 400, 2.0, true);
    const double r = ratio(lad.i[399], lad.i[398]);
    EXPECT_GT(r, 0.0);
    EXPECT_LT(r, 2.0 / (2.0 * 398.5));
    EXPECT_TRUE(std::isfinite(lad.k[399].log_abs()));
}

TEST(Bessel, RejectsInvalidArguments) {
    EXPECT_THROW(bessel_i(-1.0, 1.0), spherehit::DomainError);
    EXPECT_THROW(bessel_k(1.0, 0.0), spherehit::DomainError);
}
