#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

namespace tri = stickdist::triangle;

constexpr double median_reference = 0.1258338431386510592028005;

TEST(Triangle, HeronArea)
{
    EXPECT_NEAR(tri::heron_area(2.0 / 3, 2.0 / 3, 2.0 / 3), tri::max_area, 1e-15);
    EXPECT_NEAR(tri::heron_area(0.5, 0.75, 0.75), std::sqrt(0.5 * 0.25 * 0.25), 1e-15);
}

TEST(Triangle, PdfMatchesWIntegral)
{
    EXPECT_NEAR(tri::pdf(0.125), 2.0 * 0.125 * oracle::w_integral(0.125 * 0.125), 1e-9);
}

TEST(Triangle, PdfDomain)
{
    EXPECT_THROW(tri::pdf(0.0), stickdist::domain_error);
    EXPECT_THROW(tri::pdf(tri::max_area), stickdist::domain_error);
    EXPECT_EQ(tri::pdf_or_zero(-1.0), 0.0);
    EXPECT_EQ(tri::pdf_or_zero(0.2), 0.0);
}

TEST(Triangle, PdfNearUpperEndpointStaysFinite)
{
    // the two middle roots merge but K stays bounded, so the density tends
    // to a finite limit 8 pi / 3 rather than diverging
    const double limit = 8.0 * oracle::pi / 3.0;
    for (double gap : {1e-4, 1e-8, 1e-12}) {
        const double v = tri::pdf(tri::max_area * (1.0 - gap));
        EXPECT_TRUE(std::isfinite(v));
        EXPECT_NEAR(v, limit, 20.0 * std::sqrt(gap)) << gap;
    }
}

TEST(Triangle, PdfTinyArea)
{
    for (double zeta : {1e-12, 1e-100, 1e-200, 1e-300}) {
        const double v = tri::pdf(zeta);
        EXPECT_TRUE(std::isfinite(v));
        EXPECT_GT(v, 0.0);
    }
    // continuity across the small-argument branch
    const double below = tri::pdf(1e-90 * (1.0 - 1e-12));
    const double above = tri::pdf(1e-90 * (1.0 + 1e-12));
    EXPECT_NEAR(below / above, 1.0, 1e-10);
}

TEST(Triangle, SurvivalEndpointsAndMedian)
{
    EXPECT_EQ(tri::survival(0.0), 1.0);
    EXPECT_EQ(tri::survival(tri::max_area), 0.0);
    EXPECT_NEAR(tri::survival(median_reference), 0.5, 1e-13);
}

TEST(Triangle, SurvivalMatchesStudentIntegral)
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(1e-3, tri::max_area - 1e-3);
    for (int i = 0; i < 50; ++i) {
        const double zeta = u(rng);
        EXPECT_NEAR(tri::survival(zeta), oracle::student_survival(zeta), 1e-10) << zeta;
    }
}

TEST(Triangle, SurvivalStrictlyDecreasing)
{
    double prev = 1.0;
    for (int i = 1; i <= 1000; ++i) {
        const double zeta = tri::max_area * i / 1001.0;
        const double s = tri::survival(zeta);
        EXPECT_LT(s, prev) << zeta;
        prev = s;
    }
}

TEST(Triangle, CdfDerivativeIsPdf)
{
    for (int i = 1; i <= 200; ++i) {
        const double zeta = 0.005 + (tri::max_area - 0.01) * i / 201.0;
        const double d = oracle::derivative([](double x) { return tri::cdf(x); }, zeta, 1e-6);
        const double p = tri::pdf(zeta);
        EXPECT_NEAR(d, p, 1e-6 * p) << zeta;
    }
}

TEST(Triangle, Median)
{
    const double mu = tri::median(1e-15);
    EXPECT_NEAR(mu, median_reference, 2e-16);
    EXPECT_NEAR(tri::survival(mu), 0.5, 1e-13);
    EXPECT_NEAR(tri::median(tri::StickConvention(1.0)), 0.0314584607846627648007001, 1e-17);
    for (double len : {0.5, 1.0, 3.0, 10.0}) {
        const tri::StickConvention stick(len);
        EXPECT_EQ(tri::median(stick), stick.area_scale() * mu);
    }
    EXPECT_THROW(tri::StickConvention(0.0), stickdist::domain_error);
}

TEST(Triangle, Moments)
{
    EXPECT_NEAR(tri::total_probability(), 1.0, 1e-9);
    EXPECT_NEAR(tri::moment(1), 4.0 * oracle::pi / 105.0, 1e-9);
    EXPECT_NEAR(tri::moment(2), 1.0 / 60.0, 1e-9);
    EXPECT_THROW(tri::moment(0), stickdist::domain_error);
}

TEST(Triangle, MonteCarloAcceptanceAndMean)
{
    const auto s = tri::sample_parallel(2024, 10'000'000, 4);
    EXPECT_EQ(s.trials, 10'000'000u);
    EXPECT_NEAR(s.acceptance(), 0.25, 5.0 * s.acceptance_se());
    EXPECT_NEAR(s.mean, 4.0 * oracle::pi / 105.0, 5.0 * s.mean_se());
}

TEST(Triangle, DegenerateSidesAreNotTriangles)
{
    EXPECT_FALSE((tri::TriangleSides{1.0, 0.5, 0.5}.is_triangle()));
    EXPECT_FALSE((tri::TriangleSides{0.0, 1.0, 1.0}.is_triangle()));
    EXPECT_TRUE((tri::TriangleSides{0.9, 0.6, 0.5}.is_triangle()));
}

TEST(Triangle, KolmogorovSmirnov)
{
    const auto s = tri::sample_parallel(99, 4'000'000, 4, true);
    ASSERT_GT(s.values.size(), 900'000u);
    const double d = stickdist::mc::ks_statistic(s.values, [](double x) {
        return x <= 0.0 ? 0.0 : x >= tri::max_area ? 1.0 : tri::cdf(x);
    });
    EXPECT_LT(d, stickdist::mc::ks_critical_1pct(s.values.size()));
}
