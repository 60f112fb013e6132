#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

namespace ng = stickdist::ngon;

TEST(Ngon, FormableProbability)
{
    EXPECT_EQ(ng::formable_probability(3), (ng::Rational{1, 4}));
    EXPECT_EQ(ng::formable_probability(4), (ng::Rational{1, 2}));
    EXPECT_EQ(ng::formable_probability(5), (ng::Rational{11, 16}));
    EXPECT_EQ(ng::formable_probability(4).str(), "1/2");
    EXPECT_EQ(ng::formable_probability(64).den, std::uint64_t{1} << 57);
    EXPECT_THROW(ng::formable_probability(2), stickdist::domain_error);
    EXPECT_THROW(ng::formable_probability(65), stickdist::domain_error);
}

TEST(Ngon, RegularPolygons)
{
    const double third = 2.0 / 3.0;
    EXPECT_NEAR(ng::cyclic_polygon_area({{third, third, third}}).area, 1.0 / (3.0 * std::sqrt(3.0)), 1e-15);
    EXPECT_NEAR(ng::cyclic_polygon_area({{0.5, 0.5, 0.5, 0.5}}).area, 0.25, 1e-15);
    EXPECT_NEAR(ng::cyclic_polygon_area({{0.4, 0.4, 0.4, 0.4, 0.4}}).area, 0.2 / std::tan(oracle::pi / 5), 1e-14);
    for (int n = 3; n <= 12; ++n) {
        const std::vector<double> p(static_cast<std::size_t>(n), 2.0 / n);
        EXPECT_NEAR(ng::cyclic_polygon_area({p}).area, ng::regular_area(n), 1e-14) << n;
    }
}

TEST(Ngon, RejectsUnformable)
{
    EXPECT_THROW(ng::cyclic_polygon_area({{1.0, 0.5, 0.5}}), stickdist::not_formable);
    EXPECT_THROW(ng::cyclic_polygon_area({{1.0, 1.0}}), stickdist::not_formable);
}

TEST(Ngon, AgreesWithHeronAndBrahmagupta)
{
    stickdist::mc::Stream s(9);
    int tri = 0, quad = 0;
    while (tri < 20000 || quad < 20000) {
        const auto p3 = ng::break_stick(s, 3);
        if (p3.formable() && tri < 20000) {
            ++tri;
            const auto& v = p3.pieces;
            ASSERT_NEAR(ng::cyclic_polygon_area(p3).area, stickdist::triangle::heron_area(v[0], v[1], v[2]), 1e-9);
        }
        const auto p4 = ng::break_stick(s, 4);
        if (p4.formable() && quad < 20000) {
            ++quad;
            const auto& v = p4.pieces;
            ASSERT_NEAR(ng::cyclic_polygon_area(p4).area,
                        stickdist::quadrilateral::brahmagupta_area({v[0], v[1], v[2], v[3]}), 1e-9);
        }
    }
}

TEST(Ngon, RotationAndReversalInvariance)
{
    stickdist::mc::Stream s(4);
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 3 + trial % 6;
        ng::PieceVector pv = ng::break_stick(s, n);
        if (!pv.formable()) {
            continue;
        }
        const double area = ng::cyclic_polygon_area(pv).area;
        auto p = pv.pieces;
        for (int r = 0; r < n; ++r) {
            std::rotate(p.begin(), p.begin() + 1, p.end());
            EXPECT_NEAR(ng::cyclic_polygon_area({p}).area, area, 1e-12);
        }
        std::reverse(p.begin(), p.end());
        EXPECT_NEAR(ng::cyclic_polygon_area({p}).area, area, 1e-12);
    }
}

TEST(Ngon, MaximalAmongRandomClosures)
{
    std::mt19937_64 rng(21);
    stickdist::mc::Stream s(21);
    int instances = 0;
    while (instances < 20) {
        const int n = 4 + instances % 3;
        const auto pv = ng::break_stick(s, n);
        if (!pv.formable()) {
            continue;
        }
        ++instances;
        const double best = ng::cyclic_polygon_area(pv).area;
        int closures = 0;
        while (closures < 100) {
            const double a = oracle::random_closure_area(pv.pieces, rng);
            if (a < 0.0) {
                continue;
            }
            ++closures;
            EXPECT_LE(a, best + 1e-12);
        }
    }
}

TEST(Ngon, ChordResiduals)
{
    stickdist::mc::Stream s(6);
    int inside = 0, outside = 0;
    for (int trial = 0; trial < 20000; ++trial) {
        const int n = 3 + trial % 5;
        const auto pv = ng::break_stick(s, n);
        if (!pv.formable()) {
            continue;
        }
        const auto sol = ng::cyclic_polygon_area(pv);
        (sol.center_inside ? inside : outside)++;
        ASSERT_LE(oracle::chord_residual(pv.pieces, sol), 1e-10);
        ASSERT_LE(std::abs(sol.residual), 1e-12);
    }
    EXPECT_GT(inside, 100);
    EXPECT_GT(outside, 100);
}

TEST(Ngon, NearlyDegenerateLongestSide)
{
    // longest side just under half the perimeter: centre far outside
    const std::vector<double> p{1.0 - 2e-9, 0.4 + 1e-9, 0.6 + 1e-9};
    const auto sol = ng::cyclic_polygon_area({p});
    EXPECT_FALSE(sol.center_inside);
    EXPECT_GT(sol.area, 0.0);
    EXPECT_NEAR(sol.area, stickdist::triangle::heron_area(p[0], p[1], p[2]), 1e-12);
    EXPECT_LE(oracle::chord_residual(p, sol), 1e-10);
}

TEST(Ngon, SimulationAcceptance)
{
    for (int n : {3, 4, 5}) {
        const auto st = ng::simulate_ngon(n, 1, 1'000'000, 4);
        EXPECT_NEAR(st.acceptance(), ng::formable_probability(n).value(), 5.0 * st.acceptance_se()) << n;
        EXPECT_EQ(st.failures, 0u);
    }
    const auto st4 = ng::simulate_ngon(4, 8, 2'000'000, 4);
    EXPECT_NEAR(st4.mean, stickdist::quadrilateral::mean_area, 5.0 * st4.mean_se());
}

TEST(Ngon, SimulationDeterministic)
{
    const auto a = ng::pentagon_stats(3, 100000, 3);
    const auto b = ng::pentagon_stats(3, 100000, 3);
    EXPECT_EQ(a.values, b.values);
    EXPECT_EQ(a.histogram.counts, b.histogram.counts);
}
