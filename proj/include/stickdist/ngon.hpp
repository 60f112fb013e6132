#pragma once

// Broken-stick n-gons: formability probability, the maximal-area (cyclic)
// polygon on given sides, and Monte Carlo over n-piece sticks.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <numeric>
#include <string>
#include <vector>

#include "errors.hpp"
#include "montecarlo.hpp"
#include "roots.hpp"

namespace stickdist::ngon {

/// Reduced fraction num / den.
struct Rational {
    std::uint64_t num = 0;
    std::uint64_t den = 1;

    [[nodiscard]] double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    [[nodiscard]] std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }
    bool operator==(const Rational&) const = default;
};

/// P{n broken pieces form an n-gon} = 1 - n / 2^(n-1), exact for 3 <= n <= 64.
inline Rational formable_probability(int n)
{
    if (n < 3) {
        throw domain_error("formable_probability: n must be >= 3, got " + std::to_string(n));
    }
    if (n > 64) {
        throw domain_error("formable_probability: n above 64 does not fit the exact representation");
    }
    const std::uint64_t den = std::uint64_t{1} << (n - 1);
    const std::uint64_t num = den - static_cast<std::uint64_t>(n);
    const std::uint64_t g = std::gcd(num, den);
    return {num / g, den / g};
}

/// Pieces of the canonical stick (length 2) in stick order.
struct PieceVector {
    std::vector<double> pieces;

    [[nodiscard]] int n() const { return static_cast<int>(pieces.size()); }

    [[nodiscard]] std::size_t longest() const
    {
        // first index wins ties
        return static_cast<std::size_t>(std::max_element(pieces.begin(), pieces.end()) - pieces.begin());
    }

    /// Every piece positive and shorter than half the perimeter.
    [[nodiscard]] bool formable() const
    {
        if (pieces.size() < 3) {
            return false;
        }
        return std::all_of(pieces.begin(), pieces.end(), [](double p) { return p > 0.0 && p < 1.0; });
    }
};

/// Cyclic polygon through all vertices. `central_angles` are unsigned; when
/// the centre lies outside, the longest side's angle enters the closure
/// equation and the area with a negative sign.
struct CyclicSolution {
    double circumradius = 0.0;
    std::vector<double> central_angles;
    double area = 0.0;
    bool center_inside = true;
    double residual = 0.0;   // angle-closure residual at the returned radius
};

namespace detail {

// 2 asin(p / 2R) in the form that stays accurate as p / 2R -> 1.
inline double central_angle(double p, double radius)
{
    const double x = std::min(1.0, p / (2.0 * radius));
    if (x > 0.5) {
        return std::numbers::pi - 2.0 * std::asin(std::sqrt((1.0 - x) * (1.0 + x)));
    }
    return 2.0 * std::asin(x);
}

} // namespace detail

/// Maximal-area polygon with the given sides: finds the circumradius R from
/// the angle-closure equation, centre-inside first, reflected otherwise.
///
/// The unknown is phi, half the longest side's central angle, with
/// R = p_max / (2 sin phi). In R the closure equation is ill-conditioned when
/// that angle approaches pi; in phi its slope stays O(1).
inline CyclicSolution cyclic_polygon_area(const PieceVector& pv, double tol = 1e-12)
{
    if (!(tol > 0.0)) {
        throw domain_error("cyclic_polygon_area: tol must be positive");
    }
    if (!pv.formable()) {
        throw not_formable("cyclic_polygon_area: pieces do not form a polygon (need n >= 3, 0 < p < 1)");
    }
    const std::vector<double>& p = pv.pieces;
    const std::size_t imax = pv.longest();
    const double pmax = p[imax];
    constexpr double pi = std::numbers::pi;

    auto radius_of = [pmax](double phi) { return pmax / (2.0 * std::sin(phi)); };
    auto others = [&](double phi) {
        const double radius = radius_of(phi);
        double s = 0.0;
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (i != imax) {
                s += detail::central_angle(p[i], radius);
            }
        }
        return s;
    };
    // Inside: all angles sum to 2 pi. Outside: the longest side's angle
    // equals the sum of the others. Both are increasing in phi.
    auto inside = [&](double phi) { return others(phi) + 2.0 * phi - 2.0 * pi; };
    auto outside = [&](double phi) { return 2.0 * phi - others(phi); };

    CyclicSolution sol;
    const double top = pi / 2;   // R = p_max / 2
    sol.center_inside = inside(top) >= 0.0;
    const std::function<double(double)> closure =
        sol.center_inside ? std::function<double(double)>(inside) : std::function<double(double)>(outside);

    // Small phi is large R, where inside -> -2 pi and outside ~ 2 phi (1 - sum_others / p_max) < 0.
    const double bottom = 1e-9;
    double phi = top;
    if (closure(top) != 0.0) {
        try {
            phi = roots::find_root_bracketed(closure, bottom, top, 1e-300);
        } catch (const no_sign_change&) {
            throw no_convergence("cyclic_polygon_area: closure equation has no sign change");
        }
    }
    sol.residual = closure(phi);
    if (!(std::abs(sol.residual) <= tol)) {
        throw no_convergence("cyclic_polygon_area: angle residual " + stickdist::detail::fmt_num(sol.residual)
                             + " above tolerance " + stickdist::detail::fmt_num(tol));
    }
    const double radius = radius_of(phi);
    sol.circumradius = radius;

    // Each side with the centre spans an isosceles triangle of area
    // (p/2) sqrt(R^2 - p^2/4); for the longest side that height is R cos phi.
    sol.central_angles.resize(p.size());
    double area = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double half = 0.5 * p[i];
        double h = 0.0;
        if (i == imax) {
            sol.central_angles[i] = 2.0 * phi;
            h = radius * std::cos(phi);
        } else {
            sol.central_angles[i] = detail::central_angle(p[i], radius);
            h = std::sqrt(std::max(0.0, (radius - half) * (radius + half)));
        }
        const double t = half * h;
        area += (i == imax && !sol.center_inside) ? -t : t;
    }
    sol.area = area;
    return sol;
}

/// n pieces in stick order from n - 1 uniform breaks of the canonical stick.
inline PieceVector break_stick(mc::Stream& stream, int n)
{
    std::vector<double> cuts(static_cast<std::size_t>(n - 1));
    for (double& c : cuts) {
        c = stream.uniform(2.0);
    }
    std::sort(cuts.begin(), cuts.end());
    PieceVector pv;
    pv.pieces.reserve(static_cast<std::size_t>(n));
    double prev = 0.0;
    for (double c : cuts) {
        pv.pieces.push_back(c - prev);
        prev = c;
    }
    pv.pieces.push_back(2.0 - prev);
    return pv;
}

/// Largest cyclic n-gon area on a stick of length 2 (the regular n-gon).
inline double regular_area(int n)
{
    const double side = 2.0 / n;
    return 0.25 * n * side * side / std::tan(std::numbers::pi / n);
}

inline mc::SampleStats make_stats(int n, bool keep_values, std::size_t bins = 200)
{
    mc::SampleStats s;
    s.histogram = mc::Histogram(0.0, regular_area(n), bins);
    s.keep_values = keep_values;
    return s;
}

/// Per trial: one n-piece stick; formable ones record their cyclic area.
/// Solver failures are counted in `failures`.
inline void simulate_into(int n, mc::Stream& stream, std::uint64_t count, mc::SampleStats& stats)
{
    for (std::uint64_t i = 0; i < count; ++i) {
        stats.record_trial();
        const PieceVector pv = break_stick(stream, n);
        if (!pv.formable()) {
            continue;
        }
        try {
            stats.record_value(cyclic_polygon_area(pv).area);
        } catch (const numeric_error&) {
            ++stats.failures;
        }
    }
}

/// Deterministic in (n, seed, count, workers).
inline mc::SampleStats simulate_ngon(int n, std::uint64_t seed, std::uint64_t count, unsigned workers = 1,
                                     bool keep_values = false)
{
    if (n < 3) {
        throw domain_error("simulate_ngon: n must be >= 3");
    }
    if (count < 1) {
        throw domain_error("simulate_ngon: count must be >= 1");
    }
    auto body = [n](mc::Stream& s, std::uint64_t c, mc::SampleStats& st) { simulate_into(n, s, c, st); };
    return mc::run_parallel(mc::Stream(seed), count, workers, make_stats(n, keep_values), body);
}

/// Cyclic pentagon area estimates. No reference values exist; the returned
/// accumulator keeps the areas so medians and intervals can be formed.
inline mc::SampleStats pentagon_stats(std::uint64_t seed, std::uint64_t count, unsigned workers = 1)
{
    return simulate_ngon(5, seed, count, workers, true);
}

} // namespace stickdist::ngon
