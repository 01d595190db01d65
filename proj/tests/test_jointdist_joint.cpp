#include <gtest/gtest.h>

#include <cmath>

#include "spherehit/fpt/first_passage.hpp"
#include "spherehit/jointdist/joint.hpp"
#include "spherehit/specfun/quadrature.hpp"
#include "spherehit/specfun/sphere.hpp"
#include "spherehit/verify/oracles.hpp"

using namespace spherehit;
using namespace spherehit::jointdist;

TEST(JointLaplace, MatchesIndependentHarmonicExpansion) {
    // mpmath: Fourier / Legendre projection of the boundary data by quadrature
    EXPECT_NEAR(joint_laplace({2, 1.0, 0.5}, 1.0, 0.3, 0.4).value, 0.89155064625450945, 1e-12);
    EXPECT_NEAR(joint_laplace({3, 1.0, 0.5}, 1.0, 0.3, 0.2).value, 0.94740071042896473, 1e-12);
    EXPECT_NEAR(joint_laplace({3, 1.0, 2.0}, 0.7, -0.4, 0.5).value, 0.11578128780223315, 1e-12);
}

TEST(JointLaplace, CollapsesToFirstPassageTransform) {
    for (int d : {2, 3, 6})
        for (double a : {0.3, 2.5})
            for (double lambda : {0.1, 2.0}) {
                const Geometry g{d, 1.0, a};
                EXPECT_NEAR(joint_laplace(g, lambda, 0.0, 0.0).value, fpt::fpt_laplace(g.nu(), a, 1.0, lambda), 1e-13);
            }
}

TEST(JointLaplace, ResidualBoundIsReported) {
    const auto r = joint_laplace({4, 1.0, 0.9}, 0.5, 2.0, 1.0);
    EXPECT_LT(r.residual_bound, 1e-12);
    EXPECT_GT(r.terms, 5);
    EXPECT_THROW(joint_laplace({4, 1.0, 0.9}, 0.5, 2.0, 1.0, {3, 1e-12}), TruncationError);
}

TEST(HittingPlace, EqualsPoissonKernel) {
    for (int d : {2, 3, 4, 5, 7})
        for (double a : {0.1, 0.8, 0.95, 1.05, 1.7, 4.0})
            for (double x : {-1.0, -0.3, 0.5, 1.0}) {
                const double peak = verify::poisson_kernel(d, a, 1.0, 1.0);
                const auto h = hitting_place_density({d, 1.0, a}, x);
                EXPECT_NEAR(h.value, verify::poisson_kernel(d, a, 1.0, x), h.residual_bound + 1e-13 * peak)
                    << d << " " << a << " " << x;
            }
}

TEST(HittingPlace, IntegratesToHitProbability) {
    for (const Geometry g : {Geometry{3, 1.0, 0.7}, Geometry{5, 2.0, 3.0}, Geometry{2, 1.0, 1.5}}) {
        auto f = [&](double th) {
            const double x = std::cos(th);
            return hitting_place_density(g, x).value * specfun::zonal_weight_constant(g.d) *
                   std::pow(std::sin(th), g.d - 2);
        };
        EXPECT_NEAR(specfun::adaptive_gauss_legendre(f, 0.0, M_PI, 1e-12), fpt::hit_probability(g), 1e-10);
    }
}

TEST(JointDensity, MarginalizesToFirstPassageDensity) {
    for (const Geometry g : {Geometry{3, 1.0, 0.5}, Geometry{4, 1.0, 2.0}, Geometry{2, 1.0, 0.6}})
        for (double t : {0.2, 1.0}) {
            auto f = [&](double th) {
                return joint_density(g, t, std::cos(th)).value * specfun::zonal_weight_constant(g.d) *
                       std::pow(std::sin(th), g.d - 2);
            };
            const double marginal = specfun::adaptive_gauss_legendre(f, 0.0, M_PI, 1e-11);
            EXPECT_NEAR(marginal, fpt::fpt_density(g.nu(), g.a, g.r, t), 1e-8) << g.d << " " << t;
        }
}

TEST(JointDensity, NonNegativeAndResidualSmall) {
    const Geometry g{3, 1.0, 0.5};
    for (double t : {0.05, 0.3, 2.0})
        for (double x : {-1.0, 0.0, 0.9, 1.0}) {
            const auto r = joint_density(g, t, x);
            EXPECT_GE(r.value, -1e-10);
            EXPECT_LT(r.residual_bound, 1e-12);
        }
}
