#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

using namespace stickdist::roots;

TEST(Roots, DoubleRootAtTop)
{
    const CubicRoots r = triangle_cubic_roots(1.0 / 27.0);
    EXPECT_NEAR(r.c, -1.0 / 3.0, 1e-15);
    EXPECT_NEAR(r.a, 2.0 / 3.0, 1e-9);
    EXPECT_NEAR(r.b, 2.0 / 3.0, 1e-9);
}

TEST(Roots, SmallZLimit)
{
    const CubicRoots r = triangle_cubic_roots(1e-14);
    EXPECT_LT(r.c, 0.0);
    EXPECT_GT(r.c, -1e-6);
    EXPECT_GT(r.a, 0.0);
    EXPECT_LT(r.a, 1e-6);
    EXPECT_LT(r.b, 1.0);
    EXPECT_GT(r.b, 1.0 - 1e-12);
    EXPECT_GT(r.one_minus_b(), 0.0);
}

TEST(Roots, RejectsOutsideDomain)
{
    EXPECT_THROW(triangle_cubic_roots(0.0), stickdist::domain_error);
    EXPECT_THROW(triangle_cubic_roots(0.04), stickdist::domain_error);
}

TEST(Roots, MatchesBisectionAtPointZeroThree)
{
    const CubicRoots r = triangle_cubic_roots(0.03);
    const oracle::Triple t = oracle::cubic_by_bisection(0.03);
    EXPECT_NEAR(r.c, t.c, 1e-14);
    EXPECT_NEAR(r.a, t.a, 1e-14);
    EXPECT_NEAR(r.b, t.b, 1e-14);
}

TEST(Roots, VietaAndReconstruction)
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> uz(0.0, 1.0 / 27.0);
    std::uniform_real_distribution<double> uw(-1.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        const double z = std::max(uz(rng), 1e-300);
        const CubicRoots r = triangle_cubic_roots(z);
        EXPECT_NEAR(r.a + r.b + r.c, 1.0, 1e-12);
        EXPECT_NEAR(r.a * r.b + r.a * r.c + r.b * r.c, 0.0, 1e-12);
        EXPECT_NEAR(r.a * r.b * r.c, -4.0 * z, 1e-12);
        EXPECT_LE(r.c, r.a);
        EXPECT_LE(r.a, r.b);
        for (int j = 0; j < 10; ++j) {
            const double w = uw(rng);
            const double direct = w * w * w - w * w + 4.0 * z;
            EXPECT_NEAR((w - r.a) * (w - r.b) * (w - r.c), direct, 1e-11);
        }
    }
}

TEST(Roots, DifferenceAccessorsAreConsistent)
{
    for (double z : {1e-10, 1e-4, 0.01, 0.03, 1.0 / 27.0 - 1e-9}) {
        const CubicRoots r = triangle_cubic_roots(z);
        EXPECT_NEAR(r.one_minus_b(), 1.0 - r.b, 1e-15);
        EXPECT_NEAR(r.b_minus_a(), r.b - r.a, 1e-15);
    }
}

TEST(Roots, MonotoneInZ)
{
    double prev_a = -1.0, prev_b = 2.0;
    for (int i = 1; i <= 1000; ++i) {
        const double z = (1.0 / 27.0) * i / 1001.0;
        const CubicRoots r = triangle_cubic_roots(z);
        EXPECT_GT(r.a, prev_a) << z;
        EXPECT_LT(r.b, prev_b) << z;
        prev_a = r.a;
        prev_b = r.b;
    }
}

TEST(Roots, QuadCubicSignOfMiddleRoot)
{
    EXPECT_LT(quad_cubic_roots(0.03, 0.6).a, 0.0);
    EXPECT_GT(quad_cubic_roots(0.03, 0.2).a, 0.0);
}

TEST(Roots, QuadCubicRootsAgainstBisection)
{
    const double r1 = 0.01, r2 = 0.5;
    const QuadCubicRoots q = quad_cubic_roots(r1, r2);
    EXPECT_LT(q.c, q.a);
    EXPECT_LT(q.a, q.b);
    for (double x : {q.c, q.a, q.b}) {
        EXPECT_NEAR(quad_cubic(r1, r2, x), 0.0, 1e-11);
    }
    auto f = [&](double r3) { return quad_cubic(r1, r2, r3); };
    // brackets: below -r2, between -r2 and the local max, and up to 1
    EXPECT_NEAR(q.c, oracle::bisect(f, -3.0, -r2), 1e-12);
    const double peak = (1.0 - 2.0 * r2) / 3.0;   // stationary point of (1 - r3)(r2 + r3)^2
    EXPECT_NEAR(q.a, oracle::bisect(f, -r2, peak), 1e-12);
    EXPECT_NEAR(q.b, oracle::bisect(f, peak, 1.0), 1e-12);
}

TEST(Roots, QuadCubicNoTriple)
{
    EXPECT_THROW(quad_cubic_roots(0.06, 0.05), stickdist::no_real_triple);
}

TEST(Roots, BrentBasics)
{
    EXPECT_NEAR(find_root_bracketed([](double x) { return x * x - 2.0; }, 1.0, 2.0, 1e-15), std::sqrt(2.0),
                1e-15);
    EXPECT_NEAR(find_root_bracketed([](double x) { return std::cos(x); }, 1.0, 2.0, 1e-15), oracle::pi / 2,
                1e-15);
    EXPECT_THROW(find_root_bracketed([](double x) { return x * x + 1.0; }, -1.0, 1.0, 1e-12),
                 stickdist::no_sign_change);
}

TEST(Roots, BrentFindsTriangleMedian)
{
    const double mu = find_root_bracketed([](double x) { return stickdist::triangle::survival(x) - 0.5; },
                                          0.05, 0.19, 1e-15);
    EXPECT_NEAR(mu, 0.1258338431386510592028005, 2e-16);
}
