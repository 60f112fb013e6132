#pragma once

// Area distribution of the triangle formed from a stick broken at two
// independent uniform points, conditioned on a triangle forming.
//
// All analytic routines work in canonical units (stick length 2, so the
// semiperimeter is 1). Areas for a stick of length L are (L/2)^2 times
// the canonical ones.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <utility>

#include "errors.hpp"
#include "montecarlo.hpp"
#include "quadrature.hpp"
#include "roots.hpp"
#include "specfun.hpp"

namespace stickdist::triangle {

/// Largest attainable area (equilateral triangle of side 2/3).
inline constexpr double max_area = 0.19245008972987525483622871822;   // 1 / (3 sqrt 3)
inline constexpr double max_area_sq = 1.0 / 27.0;

/// Stick length in force; canonical value 2.
struct StickConvention {
    double length = 2.0;

    explicit StickConvention(double len = 2.0) : length(len)
    {
        if (!(length > 0.0) || !std::isfinite(length)) {
            throw domain_error("StickConvention: length must be positive and finite");
        }
    }
    /// Factor turning a canonical area into an area for this stick.
    [[nodiscard]] double area_scale() const
    {
        const double h = length / 2.0;
        return h * h;
    }
    [[nodiscard]] double area_sq_scale() const
    {
        const double s = area_scale();
        return s * s;
    }
};

/// An area value zeta together with z = zeta^2, canonical units.
struct AreaPoint {
    double zeta = 0.0;
    double z = 0.0;

    static AreaPoint from_zeta(double zeta)
    {
        if (!(zeta > 0.0 && zeta < max_area)) {
            throw domain_error("AreaPoint: zeta outside (0, 1/(3 sqrt 3)): " + detail::fmt_num(zeta));
        }
        return {zeta, zeta * zeta};
    }
};

/// Side lengths summing to 2.
struct TriangleSides {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;

    /// Strict triangle inequalities; ties count as failure.
    [[nodiscard]] bool is_triangle() const { return a < 1.0 && b < 1.0 && c < 1.0 && a > 0 && b > 0 && c > 0; }
};

/// Heron's formula in Kahan's cancellation-free arrangement. Works for any
/// side lengths satisfying the triangle inequality.
inline double heron_area(double a, double b, double c)
{
    if (a < b) std::swap(a, b);
    if (b < c) std::swap(b, c);
    if (a < b) std::swap(a, b);
    const double p = (a + (b + c)) * (c - (a - b)) * (c + (a - b)) * (a + (b - c));
    if (p < 0.0) {
        throw domain_error("heron_area: sides violate the triangle inequality");
    }
    return 0.25 * std::sqrt(p);
}

inline double heron_area(const TriangleSides& s) { return heron_area(s.a, s.b, s.c); }

/// Density of z = area^2 on (0, 1/27):
/// g(z) = 8 / sqrt((1-a)(b-c)) * K[(b-a)(1-c) / ((1-a)(b-c))].
inline double area_sq_density(double z)
{
    if (!(z > 0.0 && z <= max_area_sq)) {
        throw domain_error("area_sq_density: z outside (0, 1/27]: " + detail::fmt_num(z));
    }
    const roots::CubicRoots r = roots::triangle_cubic_roots(z);
    const double one_a = r.one_minus_a();
    const double b_c = r.b_minus_c();
    const double denom = one_a * b_c;
    // 1 - m = (a - c)(1 - b) / ((1 - a)(b - c)), exact rearrangement
    const double mc = (r.a - r.c) * r.one_minus_b() / denom;
    return 8.0 / std::sqrt(denom) * specfun::ellip_k_mc(mc);
}

/// Density of the area on the open interval (0, 1/(3 sqrt 3)).
inline double pdf(double zeta)
{
    if (!(zeta > 0.0 && zeta < max_area)) {
        throw domain_error("triangle::pdf: zeta outside (0, 1/(3 sqrt 3)): " + detail::fmt_num(zeta));
    }
    if (zeta < 1e-90) {
        // z underflows; leading behaviour 16 zeta K with 1 - m ~ 16 z^{3/2}
        const double log_mc = std::log(16.0) + 3.0 * std::log(zeta);
        return 16.0 * zeta * (std::log(4.0) - 0.5 * log_mc);
    }
    const double z = std::min(zeta * zeta, max_area_sq);
    return 2.0 * zeta * area_sq_density(z);
}

/// pdf extended by zero outside the open support, for tabulation.
inline double pdf_or_zero(double zeta)
{
    return (zeta > 0.0 && zeta < max_area) ? pdf(zeta) : 0.0;
}

/// P{area > zeta} from the closed form in E, K and Pi with
/// alpha = sqrt(1-b), beta = sqrt(1-a), gamma = sqrt(1-c).
inline double survival(double zeta)
{
    if (!(zeta >= 0.0 && zeta <= max_area)) {
        throw domain_error("triangle::survival: zeta outside [0, 1/(3 sqrt 3)]: " + detail::fmt_num(zeta));
    }
    if (zeta == 0.0) {
        return 1.0;
    }
    if (zeta == max_area) {
        return 0.0;
    }
    const double z = std::min(zeta * zeta, max_area_sq);
    if (z == 0.0) {
        return 1.0;
    }
    const roots::CubicRoots r = roots::triangle_cubic_roots(z);
    const double alpha2 = r.one_minus_b();
    const double beta2 = r.one_minus_a();
    const double gamma2 = r.one_minus_c();
    const double alpha = std::sqrt(alpha2);
    const double beta = std::sqrt(beta2);
    const double gamma = std::sqrt(gamma2);
    const double spread = r.b_minus_c();        // gamma^2 - alpha^2
    const double root_spread = std::sqrt(spread);

    const double mc = (r.a - r.c) * alpha2 / (beta2 * spread);
    const double nc = alpha2 / beta2;           // 1 - (beta^2 - alpha^2) / beta^2
    const double kk = specfun::ellip_k_mc(mc);
    const double ee = specfun::ellip_e_mc(mc);
    const double pp = specfun::ellip_pi_mc(nc, mc);

    const double quartic = (alpha + beta - gamma) * (alpha - beta - gamma) * (alpha - beta + gamma)
                           * (alpha + beta + gamma);
    const double eight_j = beta * root_spread * (alpha2 + beta2 + gamma2) * ee
                           + alpha2 * beta / root_spread * (alpha2 + beta2 - 5.0 * gamma2) * kk
                           - alpha2 / (beta * root_spread) * quartic * pp;
    return std::clamp(0.5 * eight_j, 0.0, 1.0);
}

inline double cdf(double zeta) { return 1.0 - survival(zeta); }

/// Bracket used for the median search; survival is above 1/2 at the left
/// end and below at the right.
inline constexpr double median_bracket_lo = 0.05;
inline constexpr double median_bracket_hi = 0.19;

/// Median area in canonical units: the root of survival(mu) = 1/2.
inline double median(double tol = 1e-15)
{
    if (!(tol > 0.0)) {
        throw domain_error("triangle::median: tol must be positive");
    }
    return roots::find_root_bracketed([](double x) { return survival(x) - 0.5; }, median_bracket_lo,
                                      median_bracket_hi, tol);
}

/// Median area for the given stick length: scaled from the canonical value.
inline double median(const StickConvention& stick, double tol = 1e-15)
{
    return stick.area_scale() * median(tol);
}

/// E[area^k], canonical units, by tanh-sinh quadrature of zeta^k pdf(zeta).
inline double moment(int k, double tol = 1e-12)
{
    if (k < 1) {
        throw domain_error("triangle::moment: k must be >= 1");
    }
    auto integrand = [k](double zeta, double, double to_top) {
        if (zeta <= 0.0 || to_top <= 0.0) {
            return 0.0;
        }
        return std::pow(zeta, k) * pdf(std::min(zeta, std::nextafter(max_area, 0.0)));
    };
    return quadrature::integrate_endpoint_singular_or_throw(integrand, 0.0, max_area, tol);
}

/// Normalisation check, the k = 0 moment.
inline double total_probability(double tol = 1e-12)
{
    auto integrand = [](double zeta, double, double to_top) {
        if (zeta <= 0.0 || to_top <= 0.0) {
            return 0.0;
        }
        return pdf(std::min(zeta, std::nextafter(max_area, 0.0)));
    };
    return quadrature::integrate_endpoint_singular_or_throw(integrand, 0.0, max_area, tol);
}

/// Pieces from two uniform breaks of the canonical stick, in stick order.
inline TriangleSides break_stick(mc::Stream& stream)
{
    double u = stream.uniform(2.0);
    double v = stream.uniform(2.0);
    if (v < u) {
        std::swap(u, v);
    }
    return {u, v - u, 2.0 - v};
}

inline mc::SampleStats make_stats(bool keep_values, std::size_t bins = 200)
{
    mc::SampleStats s;
    s.histogram = mc::Histogram(0.0, max_area, bins);
    s.keep_values = keep_values;
    return s;
}

/// Draws `count` broken sticks from `stream`, recording acceptance and the
/// Heron area of each triangle into `stats`.
inline void sample_into(mc::Stream& stream, std::uint64_t count, mc::SampleStats& stats)
{
    for (std::uint64_t i = 0; i < count; ++i) {
        stats.record_trial();
        const TriangleSides s = break_stick(stream);
        if (s.is_triangle()) {
            stats.record_value(heron_area(s));
        }
    }
}

inline mc::SampleStats sample(mc::Stream& stream, std::uint64_t count, bool keep_values = false)
{
    if (count < 1) {
        throw domain_error("triangle::sample: count must be >= 1");
    }
    mc::SampleStats stats = make_stats(keep_values);
    stats.seeds.push_back(stream.seed());
    sample_into(stream, count, stats);
    return stats;
}

/// Deterministic multi-threaded sampling: a pure function of
/// (seed, count, workers).
inline mc::SampleStats sample_parallel(std::uint64_t seed, std::uint64_t count, unsigned workers,
                                       bool keep_values = false)
{
    if (count < 1) {
        throw domain_error("triangle::sample: count must be >= 1");
    }
    return mc::run_parallel(mc::Stream(seed), count, workers, make_stats(keep_values), sample_into);
}

} // namespace stickdist::triangle
