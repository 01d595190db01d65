#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "spherehit/fpt/first_passage.hpp"

using namespace spherehit::fpt;

TEST(FptTransform, MatchesReferenceRatios) {
    // mpmath Bessel ratios
    EXPECT_NEAR(fpt_laplace(0.0, 0.5, 1.0, 1.0), 0.72088195842206781, 1e-14);
    EXPECT_NEAR(fpt_laplace(1.0, 2.0, 1.0, 0.5), 0.11618558043462179, 1e-14);
    EXPECT_NEAR(fpt_laplace(1.5, 0.3, 2.0, 3.0), 0.15809284473708542, 1e-14);
    EXPECT_NEAR(fpt_laplace(0.0, 3.0, 1.0, 0.01), 0.50945100829064444, 1e-14);
    EXPECT_NEAR(fpt_laplace(3.0, 1.5, 1.0, 2.0), 0.055915116961378024, 1e-14);
}

TEST(FptTransform, HalfOrderClosedForm) {
    for (double lambda : {0.01, 0.7, 5.0}) {
        const double k = std::sqrt(2.0 * lambda);
        EXPECT_NEAR(fpt_laplace(0.5, 2.0, 1.0, lambda), 0.5 * std::exp(-k), 1e-14);
        EXPECT_NEAR(fpt_laplace(0.5, 0.4, 1.0, lambda), std::sinh(0.4 * k) / (0.4 * std::sinh(k)), 1e-14);
    }
}

TEST(FptTransform, SmallRateApproachesHitProbability) {
    EXPECT_NEAR(fpt_laplace(1.0, 2.0, 1.0, 1e-12), hit_probability(1.0, 2.0, 1.0), 1e-5);
    EXPECT_NEAR(fpt_laplace(1.0, 0.5, 1.0, 1e-12), 1.0, 1e-10);
    EXPECT_DOUBLE_EQ(hit_probability(1.5, 2.0, 1.0), 0.125);
    EXPECT_DOUBLE_EQ(hit_probability(0.0, 5.0, 1.0), 1.0);
    EXPECT_DOUBLE_EQ(hit_probability(Geometry{5, 1.0, 2.0}), 0.125);
}

TEST(FptTransform, LadderMatchesScalarCalls) {
    std::vector<double> ladder(12);
    fpt_laplace_ladder<double>(0.5, 2.5, 1.0, 0.8, ladder);
    for (int n = 0; n < 12; ++n) EXPECT_NEAR(ladder[n], fpt_laplace(0.5 + n, 2.5, 1.0, 0.8), 1e-14 + 1e-12 * ladder[n]);
}

TEST(FptTransform, MultiprecisionLadderAgreesWithDouble) {
    for (double a : {0.6, 1.7}) {
        std::vector<mp_real> hi(8);
        std::vector<double> lo(8);
        fpt_laplace_ladder_mp(1.0, a, 1.0, mp_real("0.9"), hi);
        fpt_laplace_ladder<double>(1.0, a, 1.0, 0.9, lo);
        for (int n = 0; n < 8; ++n) EXPECT_NEAR(static_cast<double>(hi[n]) / lo[n], 1.0, 1e-13);
    }
}

TEST(FptTransform, InteriorNegativeNodeContinuesAnalytically) {
    // below the first pole the transform is a J-Bessel ratio; compare with
    // the complex-argument evaluation
    std::vector<mp_real> hi(5);
    fpt_laplace_ladder_mp(0.5, 0.4, 1.0, mp_real("-1.5"), hi);
    std::vector<std::complex<double>> z(5);
    fpt_laplace_ladder<std::complex<double>>(0.5, 0.4, 1.0, std::complex<double>(-1.5, 1e-300), z);
    for (int n = 0; n < 5; ++n) EXPECT_NEAR(static_cast<double>(hi[n]), z[n].real(), 1e-12);
    EXPECT_THROW(fpt_laplace_ladder_mp(0.5, 2.0, 1.0, mp_real(-1), hi), spherehit::DomainError);
}

TEST(FptTransform, RejectsInvalidArguments) {
    EXPECT_THROW(fpt_laplace(1.0, 1.0, 1.0, 1.0), spherehit::DomainError);
    EXPECT_THROW(fpt_laplace(1.0, 2.0, 1.0, 0.0), spherehit::DomainError);
    EXPECT_THROW(fpt_laplace(-0.5, 2.0, 1.0, 1.0), spherehit::DomainError);
    EXPECT_THROW(validate(Geometry{1, 1.0, 2.0}), spherehit::DomainError);
}
