#pragma once

// Seeded random streams and the mergeable Monte Carlo accumulator shared by
// the triangle, quadrilateral and n-gon samplers.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <thread>
#include <vector>

#include "errors.hpp"

namespace stickdist::mc {

inline std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Caller-owned random stream. Uniforms are built from the top 53 bits of
/// the engine output so results do not depend on the standard library's
/// distribution implementation.
class Stream {
public:
    explicit Stream(std::uint64_t seed) : seed_(seed), engine_(splitmix64(seed)) {}

    /// Substream for worker `index`; a pure function of (seed, index).
    [[nodiscard]] Stream split(std::uint64_t index) const
    {
        return Stream(splitmix64(seed_ ^ splitmix64(index + 0x632be59bd9b4e019ULL)));
    }

    /// Uniform on [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform on [0, width).
    double uniform(double width) { return width * uniform(); }

    [[nodiscard]] std::uint64_t seed() const { return seed_; }

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

/// Fixed-range histogram; values outside [lo, hi) land in the end bins.
struct Histogram {
    double lo = 0.0;
    double hi = 1.0;
    std::vector<std::uint64_t> counts;

    Histogram() = default;
    Histogram(double lo_, double hi_, std::size_t bins) : lo(lo_), hi(hi_), counts(bins, 0) {}

    void add(double x)
    {
        if (counts.empty()) {
            return;
        }
        const double pos = (x - lo) / (hi - lo) * static_cast<double>(counts.size());
        const auto last = static_cast<long>(counts.size()) - 1;
        const long i = std::clamp(static_cast<long>(std::floor(pos)), 0L, last);
        ++counts[static_cast<std::size_t>(i)];
    }

    [[nodiscard]] double bin_width() const { return (hi - lo) / static_cast<double>(counts.size()); }
    [[nodiscard]] double bin_center(std::size_t i) const
    {
        return lo + (static_cast<double>(i) + 0.5) * bin_width();
    }
};

/// Monte Carlo accumulator: trial count, acceptance count, Welford
/// mean / M2 over accepted values, a histogram and (optionally) the raw
/// accepted values. Merging is order dependent only through floating
/// point rounding, so callers merge in worker order.
struct SampleStats {
    std::uint64_t trials = 0;
    std::uint64_t accepted = 0;
    std::uint64_t failures = 0;          // solver failures, never silently dropped
    double mean = 0.0;
    double m2 = 0.0;
    Histogram histogram;
    bool keep_values = false;
    std::vector<double> values;
    std::vector<std::uint64_t> seeds;    // lineage: seed of every contributing stream

    void record_trial() { ++trials; }

    void record_value(double x)
    {
        ++accepted;
        const double delta = x - mean;
        mean += delta / static_cast<double>(accepted);
        m2 += delta * (x - mean);
        histogram.add(x);
        if (keep_values) {
            values.push_back(x);
        }
    }

    void merge(const SampleStats& o)
    {
        if (o.accepted > 0) {
            const double n1 = static_cast<double>(accepted);
            const double n2 = static_cast<double>(o.accepted);
            const double n = n1 + n2;
            const double delta = o.mean - mean;
            mean += delta * n2 / n;
            m2 += o.m2 + delta * delta * n1 * n2 / n;
        }
        trials += o.trials;
        accepted += o.accepted;
        failures += o.failures;
        if (histogram.counts.size() == o.histogram.counts.size()) {
            for (std::size_t i = 0; i < histogram.counts.size(); ++i) {
                histogram.counts[i] += o.histogram.counts[i];
            }
        }
        values.insert(values.end(), o.values.begin(), o.values.end());
        seeds.insert(seeds.end(), o.seeds.begin(), o.seeds.end());
    }

    [[nodiscard]] double acceptance() const
    {
        return trials ? static_cast<double>(accepted) / static_cast<double>(trials) : 0.0;
    }
    [[nodiscard]] double acceptance_se() const
    {
        if (trials == 0) {
            return 0.0;
        }
        const double p = acceptance();
        return std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
    }
    [[nodiscard]] double variance() const
    {
        return accepted > 1 ? m2 / static_cast<double>(accepted - 1) : 0.0;
    }
    [[nodiscard]] double mean_se() const
    {
        return accepted > 1 ? std::sqrt(variance() / static_cast<double>(accepted)) : 0.0;
    }
};

/// Sample median with a one-sigma error bar from the binomial order
/// statistic: the half distance between ranks n/2 -+ sqrt(n)/2.
struct MedianEstimate {
    double median = 0.0;
    double error = 0.0;
};

inline MedianEstimate empirical_median(std::vector<double> values)
{
    if (values.empty()) {
        throw domain_error("empirical_median: no values");
    }
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    const double med = (n % 2) ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
    const double spread = 0.5 * std::sqrt(static_cast<double>(n));
    const auto rank = [&](double r) {
        const double c = std::clamp(r, 0.0, static_cast<double>(n - 1));
        return values[static_cast<std::size_t>(std::llround(c))];
    };
    const double half = static_cast<double>(n) / 2.0;
    return {med, 0.5 * (rank(half + spread) - rank(half - spread))};
}

/// Runs `body(stream, count, stats)` on `workers` threads, each with the
/// substream `master.split(i)` and a deterministic share of `count`, and
/// merges the per-worker accumulators in worker order. The result depends
/// only on (seed, count, workers).
inline SampleStats run_parallel(const Stream& master, std::uint64_t count, unsigned workers,
                                const SampleStats& prototype,
                                const std::function<void(Stream&, std::uint64_t, SampleStats&)>& body)
{
    if (workers == 0) {
        throw domain_error("run_parallel: workers must be >= 1");
    }
    std::vector<SampleStats> parts(workers, prototype);
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (unsigned i = 0; i < workers; ++i) {
        const std::uint64_t share = count / workers + (i < count % workers ? 1 : 0);
        threads.emplace_back([&, i, share] {
            Stream s = master.split(i);
            parts[i].seeds.push_back(s.seed());
            body(s, share, parts[i]);
        });
    }
    for (auto& t : threads) {
        t.join();
    }
    SampleStats total = prototype;
    for (const auto& p : parts) {
        total.merge(p);
    }
    return total;
}

/// Two-sided Kolmogorov-Smirnov statistic of `values` against `cdf`.
template <class Cdf>
double ks_statistic(std::vector<double> values, Cdf&& cdf)
{
    std::sort(values.begin(), values.end());
    const double n = static_cast<double>(values.size());
    double d = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double f = cdf(values[i]);
        d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
    }
    return d;
}

/// Asymptotic 1% critical value of the one-sample KS statistic.
inline double ks_critical_1pct(std::size_t n)
{
    return 1.6276 / std::sqrt(static_cast<double>(n));
}

} // namespace stickdist::mc
