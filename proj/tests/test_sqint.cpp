#include "rrlie/sqint.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace rrlie::sqint;

namespace {

constexpr double two_pi = 2 * std::numbers::pi;

HeisenbergModel model(int d, double lambda, double tol = 1e-6) { return HeisenbergModel{d, lambda, Grid{}, tol}; }

} // namespace

TEST(Hermite, Orthonormal)
{
    // trapezoid Gram matrix of psi_0..psi_7 on a wide fine grid
    const Grid g{12.0, 961};
    for (int m = 0; m < 8; ++m)
        for (int n = 0; n < 8; ++n) {
            double s = 0;
            for (int k = 0; k < g.points; ++k)
                s += trapezoid_weight(g, k) * hermite_function(m, g.at(k)) * hermite_function(n, g.at(k));
            EXPECT_NEAR(s, m == n ? 1.0 : 0.0, 1e-12) << m << "," << n;
        }
}

TEST(Fourier, GaussianClosedForm)
{
    // int exp(-x^2/(2 s^2)) exp(-i w x) dx = sqrt(2 pi) s exp(-s^2 w^2 / 2)
    for (double s : {0.5, 1.0, 2.0})
        for (double w : {0.0, 0.7, 3.0}) {
            const auto f = fourier(Profile{s, 0}, w, 321);
            EXPECT_NEAR(f.real(), std::sqrt(two_pi) * s * std::exp(-s * s * w * w / 2), 1e-12);
            EXPECT_NEAR(f.imag(), 0.0, 1e-12);
        }
    EXPECT_NEAR(fourier_integral(Profile{1.3, 0}, 321).real(), two_pi, 1e-10);
}

TEST(Orthogonality, GroundStateIsTwoPi)
{
    EXPECT_NEAR(coefficient_norm_ratio(model(1, 1.0), {0}, {0}), two_pi, 1e-9);
    EXPECT_NEAR(coefficient_norm_ratio(model(1, 4.0), {0}, {0}), two_pi, 1e-9);
    EXPECT_NEAR(coefficient_norm_ratio(model(1, 1.0), {0}, {1}), two_pi, 1e-9);
}

TEST(Orthogonality, RatioConstantAcrossTriples)
{
    const auto r = orthogonality_suite(1, 1.0);
    EXPECT_GE(r.samples.size(), 10u);
    EXPECT_LT(r.spread, 1e-5);
    EXPECT_NEAR(r.kappa / r.expected, 1.0, 1e-4);
}

TEST(Orthogonality, TwoPairs)
{
    EXPECT_NEAR(coefficient_norm_ratio(model(2, 0.5), {0, 1}, {2, 0}), two_pi * two_pi, 1e-7);
}

TEST(Orthogonality, CoarseGridIsRefinementError)
{
    HeisenbergModel m{1, 1.0, Grid{4.0, 9}, 1e-6};
    EXPECT_THROW(coefficient_norm_ratio(m, {3}, {4}), rrlie::refinement_error);
}

TEST(Orthogonality, RejectsBadInput)
{
    EXPECT_THROW(coefficient_norm_ratio(model(1, 0.0), {0}, {0}), rrlie::domain_error);
    EXPECT_THROW(coefficient_norm_ratio(model(3, 1.0), {0}, {0}), rrlie::domain_error);
    EXPECT_THROW(coefficient_norm_ratio(model(1, 1.0), {0, 0}, {0}), rrlie::domain_error);
    EXPECT_THROW(coefficient_norm_ratio(model(1, 1.0), {-1}, {0}), rrlie::domain_error);
}

TEST(Character, OrbitIntegralMatchesTrace)
{
    for (double l : {1.0, 0.6, 2.5}) {
        const auto v = character_value(model(1, l), TestFunction::gaussian(1));
        EXPECT_LT(v.relative_difference, 1e-6) << l;
        // closed form for the standard Gaussian: 2 pi sqrt(2 pi) exp(-l^2/2) / |l|
        EXPECT_NEAR(v.orbit.real(), two_pi * std::sqrt(two_pi) * std::exp(-l * l / 2) / l, 1e-9);
    }
}

TEST(Character, NonGaussianProfiles)
{
    TestFunction f{{Profile{0.8, 2}}, {Profile{1.2, 4}}, Profile{1.0, 2}, 1.0};
    const auto v = character_value(model(1, 1.3), f);
    EXPECT_LT(v.relative_difference, 1e-6);
}

TEST(Character, TwoPairs)
{
    const auto v = character_value(model(2, 1.0), TestFunction::gaussian(2, 0.9));
    EXPECT_LT(v.relative_difference, 1e-6);
}

TEST(Character, SignOfLambdaOnEvenFunction)
{
    const auto f = TestFunction::gaussian(1);
    const auto a = character_value(model(1, 1.7), f), b = character_value(model(1, -1.7), f);
    EXPECT_NEAR(std::abs(a.orbit - b.orbit), 0.0, 1e-12);
}

TEST(Character, Linearity)
{
    const auto f = TestFunction::gaussian(1);
    const auto a = character_value(model(1, 1.0), f), b = character_value(model(1, 1.0), f.scaled(-3.5));
    EXPECT_NEAR(std::abs(b.orbit + 3.5 * a.orbit), 0.0, 1e-12);
}

TEST(Inversion, OnePair)
{
    const auto r = inversion_check(1, TestFunction::gaussian(1));
    EXPECT_LT(r.error, 1e-6);
    EXPECT_NEAR(r.expected, 1.0, 1e-15);
}

TEST(Inversion, TwoPairs)
{
    const auto r = inversion_check(2, TestFunction::gaussian(2), 12.0, 241, 161, 1e-5);
    EXPECT_LT(r.error, 1e-5);
}

TEST(Inversion, NonGaussianProfile)
{
    TestFunction f{{Profile{0.8, 2}}, {Profile{1.1, 0}}, Profile{0.9, 2}, 2.0};
    const auto r = inversion_check(1, f);
    EXPECT_LT(r.error, 1e-6);
}

TEST(Inversion, ZeroFunction)
{
    const auto r = inversion_check(1, TestFunction::gaussian(1).scaled(0.0));
    EXPECT_EQ(r.expected, 0.0);
    EXPECT_EQ(r.value, 0.0);
}

TEST(Inversion, ShortExtentIsReported)
{
    EXPECT_THROW(inversion_check(1, TestFunction::gaussian(1), 2.0), rrlie::refinement_error);
}
