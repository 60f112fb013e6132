#include <gtest/gtest.h>

#include "oracles.hpp"

namespace mc = stickdist::mc;

TEST(MonteCarlo, StreamsAreReproducibleAndDistinct)
{
    mc::Stream a(42), b(42);
    for (int i = 0; i < 100; ++i) {
        EXPECT_EQ(a.uniform(), b.uniform());
    }
    mc::Stream s0 = mc::Stream(42).split(0), s1 = mc::Stream(42).split(1);
    EXPECT_NE(s0.seed(), s1.seed());
    EXPECT_NE(s0.uniform(), s1.uniform());
}

TEST(MonteCarlo, UniformRange)
{
    mc::Stream s(1);
    for (int i = 0; i < 100000; ++i) {
        const double u = s.uniform();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
    }
}

TEST(MonteCarlo, MergeMatchesSinglePass)
{
    mc::SampleStats all, left, right;
    all.histogram = left.histogram = right.histogram = mc::Histogram(0.0, 1.0, 10);
    mc::Stream s(8);
    for (int i = 0; i < 1000; ++i) {
        const double x = s.uniform();
        all.record_trial();
        all.record_value(x);
        auto& part = i < 400 ? left : right;
        part.record_trial();
        part.record_value(x);
    }
    left.merge(right);
    EXPECT_EQ(left.accepted, all.accepted);
    EXPECT_NEAR(left.mean, all.mean, 1e-14);
    EXPECT_NEAR(left.variance(), all.variance(), 1e-14);
    EXPECT_EQ(left.histogram.counts, all.histogram.counts);
}

TEST(MonteCarlo, ParallelRunDeterministic)
{
    const auto a = stickdist::triangle::sample_parallel(5, 100000, 3, true);
    const auto b = stickdist::triangle::sample_parallel(5, 100000, 3, true);
    EXPECT_EQ(a.values, b.values);
    EXPECT_EQ(a.mean, b.mean);
    EXPECT_EQ(a.seeds, b.seeds);
    EXPECT_EQ(a.seeds.size(), 3u);
}

TEST(MonteCarlo, EmpiricalMedian)
{
    std::vector<double> v;
    for (int i = 0; i < 10001; ++i) {
        v.push_back(i / 10000.0);
    }
    const auto m = mc::empirical_median(v);
    EXPECT_DOUBLE_EQ(m.median, 0.5);
    // one-sigma half width of the rank window is sqrt(n)/2 ranks
    EXPECT_NEAR(m.error, 0.5 * std::sqrt(10001.0) / 10000.0, 1e-4);
    EXPECT_THROW(mc::empirical_median({}), stickdist::domain_error);
}

TEST(MonteCarlo, KsStatisticOfExactQuantiles)
{
    std::vector<double> v;
    for (int i = 0; i < 1000; ++i) {
        v.push_back((i + 0.5) / 1000.0);
    }
    EXPECT_NEAR(mc::ks_statistic(v, [](double x) { return x; }), 0.0005, 1e-12);
}
