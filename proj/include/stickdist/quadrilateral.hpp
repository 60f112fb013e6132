#pragma once

// Cyclic quadrilaterals from a stick broken at three uniform points.
//
// Canonical units again: stick length 2, sides s1..s4 in stick order,
// semiperimeter 1, so Brahmagupta's formula reads
// area^2 = (1 - s1)(1 - s2)(1 - s3)(1 - s4).

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "montecarlo.hpp"
#include "quadrature.hpp"
#include "roots.hpp"

namespace stickdist::quadrilateral {

inline constexpr double pi = std::numbers::pi;

/// Largest attainable area^2 (the square of side 1/2).
inline constexpr double max_area_sq = 1.0 / 16.0;
inline constexpr double max_area = 0.25;

/// Closed-form moments of the area, canonical units.
inline constexpr double mean_area = 4.0 * (17.0 * pi / 525.0 - pi * pi / 160.0);
inline constexpr double mean_area_sq = 1.0 / 35.0;

/// Limit of the area^2 density as area -> 0.
inline constexpr double density_at_zero = 1.5 * pi * pi;

/// Median area from numeric_median(1e-12); the area CDF there is 1/2 to
/// within 5e-13. Regression anchor for the Monte Carlo path.
inline constexpr double median_area_reference = 0.16961730635850977;

struct QuadSides {
    double s1 = 0.0, s2 = 0.0, s3 = 0.0, s4 = 0.0;

    [[nodiscard]] bool valid() const
    {
        return s1 > 0 && s2 > 0 && s3 > 0 && s4 > 0 && s1 < 1 && s2 < 1 && s3 < 1 && s4 < 1
               && std::abs(s1 + s2 + s3 + s4 - 2.0) < 1e-12;
    }
};

inline double brahmagupta_area(const QuadSides& q)
{
    if (!q.valid()) {
        throw domain_error("brahmagupta_area: sides must lie in (0, 1) and sum to 2");
    }
    const double r = (1.0 - q.s1) * (1.0 - q.s2) * (1.0 - q.s3) * (1.0 - q.s4);
    if (r < 0.0) {
        throw domain_error("brahmagupta_area: negative radicand");
    }
    return std::sqrt(r);
}

/// Marginal density of a single side, (3/4)(1 + 2x - 2x^2) on (0, 1).
inline double marginal_side_density(double x)
{
    if (!(x > 0.0 && x < 1.0)) {
        throw domain_error("marginal_side_density: x outside (0, 1)");
    }
    return 0.75 * (1.0 + 2.0 * x - 2.0 * x * x);
}

// ---------------------------------------------------------------------------
// Angles

/// Sides with two adjacent vertex angles: alpha1 lies between s3 and s4,
/// alpha2 between s4 and s1. The opposite angles are pi - alpha1 (between
/// s1 and s2) and pi - alpha2 (between s2 and s3).
struct QuadAngleConfig {
    QuadSides sides;
    double alpha1 = 0.0;
    double alpha2 = 0.0;

    [[nodiscard]] double alpha3() const { return pi - alpha1; }
    [[nodiscard]] double alpha4() const { return pi - alpha2; }
};

namespace detail {

inline double clamp_cos(double c, const char* which)
{
    constexpr double slack = 1e-12;
    if (!(c >= -1.0 - slack && c <= 1.0 + slack)) {
        throw numeric_error(std::string("angles_from_sides: cos ") + which + " out of range: "
                            + stickdist::detail::fmt_num(c));
    }
    return std::clamp(c, -1.0, 1.0);
}

} // namespace detail

/// Vertex angles from the law of cosines on both diagonals, with the
/// supplementary opposite angle eliminated.
inline QuadAngleConfig angles_from_sides(const QuadSides& q)
{
    if (!q.valid()) {
        throw domain_error("angles_from_sides: sides must lie in (0, 1) and sum to 2");
    }
    const double s1 = q.s1, s2 = q.s2, s3 = q.s3, s4 = q.s4;
    const double cos1 = detail::clamp_cos(
        (s3 * s3 + s4 * s4 - s1 * s1 - s2 * s2) / (2.0 * (s3 * s4 + s1 * s2)), "alpha1");
    const double cos2 = detail::clamp_cos(
        (s1 * s1 + s4 * s4 - s2 * s2 - s3 * s3) / (2.0 * (s1 * s4 + s2 * s3)), "alpha2");

    // Each diagonal seen from both of its sides.
    const double d13a = s3 * s3 + s4 * s4 - 2.0 * s3 * s4 * cos1;
    const double d13b = s1 * s1 + s2 * s2 + 2.0 * s1 * s2 * cos1;
    const double d24a = s1 * s1 + s4 * s4 - 2.0 * s1 * s4 * cos2;
    const double d24b = s2 * s2 + s3 * s3 + 2.0 * s2 * s3 * cos2;
    if (std::abs(std::sqrt(d13a) - std::sqrt(d13b)) > 1e-10
        || std::abs(std::sqrt(d24a) - std::sqrt(d24b)) > 1e-10) {
        throw numeric_error("angles_from_sides: diagonal lengths disagree");
    }
    return {q, std::acos(cos1), std::acos(cos2)};
}

/// phi(x, y) = [4 cos x - 3 cos 2y - 1] tan(x/2)^2 / (2 [sin x + sin y]^2 sin(y)^2)
inline double tent_kernel(double x, double y)
{
    const double t = std::tan(0.5 * x);
    const double sy = std::sin(y);
    const double ss = std::sin(x) + sy;
    return (4.0 * std::cos(x) - 3.0 * std::cos(2.0 * y) - 1.0) * t * t / (2.0 * ss * ss * sy * sy);
}

/// Joint density of two adjacent angles on (0, pi)^2. The square is cut
/// by its diagonals into four triangles, each carrying a reflected copy of
/// tent_kernel.
inline double tent_density(double x, double y)
{
    if (!(x > 0.0 && x < pi && y > 0.0 && y < pi)) {
        throw domain_error("tent_density: (x, y) outside the open square (0, pi)^2");
    }
    const bool below_anti = x + y <= pi;   // y <= pi - x
    if (x <= y) {
        return below_anti ? tent_kernel(x, y)           // left triangle
                          : tent_kernel(pi - y, x);     // top triangle
    }
    return below_anti ? tent_kernel(y, x)               // bottom triangle
                      : tent_kernel(pi - x, y);         // right triangle
}

namespace detail {

// Series about x = 0: sum over odd k of x^k (c_k + d_k ln(x/2)).
inline constexpr std::array<double, 15> angle_series_c = {
    0.8333333333333333333, 1.548611111111111111, 1.222569444444444444, 0.7560846560846560847,
    0.4239833645649617872, 0.2258167522300551814, 0.1162110983196143063, 0.05826517920986478085,
    0.02860793449799298676, 0.01380700354383642349, 0.006568688124518797383, 0.003087307695039657765,
    0.001436008068679764030, 0.0006619305602069580364, 0.0003027162708850560721};
inline constexpr std::array<double, 15> angle_series_d = {
    0.0, 1.5, 1.875, 1.475, 0.9536210317460317460, 0.5563082837301587302, 0.3050146648779461279,
    0.1603710561787198692, 0.08176403973406856591, 0.04070175408436738902, 0.01987444147621139299,
    0.009551288291614429737, 0.004529078336099538734, 0.002123193170564352624, 0.0009855458216036318813};

// Series about x = pi/2 in e^2, e = x - pi/2 (the density is even in e).
inline constexpr std::array<double, 12> angle_series_half = {
    0.423688222292458284009, -0.06971477739147943795024, -0.03117838686085044569486,
    -0.00482387353881025699685, -0.0003083818731036975380775, 0.0000564069339006839361215,
    0.00002733460320908763454368, 0.00000747763508190282591687, 0.000001786090475486403808637,
    4.170886090732673914017e-7, 9.99501829011027396311e-8, 2.507446818011291971575e-8};

inline constexpr double angle_zero_cutoff = 0.4;
inline constexpr double angle_half_cutoff = 0.25;

inline double angle_density_near_zero(double x)
{
    const double ln_half = std::log(0.5 * x);
    const double x2 = x * x;
    double sum = 0.0;
    for (std::size_t i = angle_series_c.size(); i-- > 0;) {
        sum = sum * x2 + (angle_series_c[i] + angle_series_d[i] * ln_half);
    }
    return sum * x;
}

inline double angle_density_near_half(double e)
{
    const double e2 = e * e;
    double sum = 0.0;
    for (std::size_t i = angle_series_half.size(); i-- > 0;) {
        sum = sum * e2 + angle_series_half[i];
    }
    return sum;
}

// Closed form, evaluated in extended precision to contain the cancellation
// between the logarithmic terms.
inline double angle_density_direct(double xd)
{
    using L = long double;
    const L x = xd;
    const L c1 = std::cos(x), c3 = std::cos(3 * x), c5 = std::cos(5 * x), c7 = std::cos(7 * x);
    const L psi1 = -25 * c1 + 7 * c3 + 17 * c5 + c7;
    const L psi2 = 42 * c1 + 19 * c3 + 3 * c5;
    const L psi3 = 378 + 489 * std::cos(2 * x) + 150 * std::cos(4 * x) + 7 * std::cos(6 * x);
    const L s = std::sin(x);
    const L num = psi1 - 16 * psi2 * std::log(s / 2) + psi3 * std::log(std::tan(x / 2));
    const L s2 = s * s;
    return static_cast<double>(num / (16 * c1 * c1 * c1 * s2 * s2 * s));
}

} // namespace detail

/// Marginal density of a single vertex angle on (0, pi):
/// [psi1 - 16 psi2 ln(sin(x)/2) + psi3 ln(tan(x/2))] / (16 cos^3 x sin^5 x).
/// Series expansions replace the closed form near 0, pi/2 and pi, where
/// its terms cancel catastrophically.
inline double angle_density(double x)
{
    if (!(x > 0.0 && x < pi)) {
        throw domain_error("angle_density: x outside (0, pi)");
    }
    const double e = x - 0.5 * pi;
    if (std::abs(e) < detail::angle_half_cutoff) {
        return detail::angle_density_near_half(e);
    }
    if (x < detail::angle_zero_cutoff) {
        return detail::angle_density_near_zero(x);
    }
    if (pi - x < detail::angle_zero_cutoff) {
        return detail::angle_density_near_zero(pi - x);
    }
    return detail::angle_density_direct(x);
}

/// E[alpha^k] from angle_density.
inline double angle_moment(int k, double tol = 1e-13)
{
    if (k < 0) {
        throw domain_error("angle_moment: k must be >= 0");
    }
    return quadrature::integrate_endpoint_singular_or_throw(
        [k](double x) { return std::pow(x, k) * angle_density(x); }, 0.0, pi, tol);
}

/// Integral of tent_density(x, y) over y in (0, pi).
inline double tent_marginal(double x, double tol = 1e-11)
{
    if (!(x > 0.0 && x < pi)) {
        throw domain_error("tent_marginal: x outside (0, pi)");
    }
    const double lo = std::min(x, pi - x);
    const double hi = std::max(x, pi - x);
    auto f = [x](double y) { return tent_density(x, y); };
    double total = 0.0;
    const double cuts[4] = {0.0, lo, hi, pi};
    for (int i = 0; i < 3; ++i) {
        if (cuts[i + 1] > cuts[i]) {
            total += quadrature::integrate_endpoint_singular_or_throw(f, cuts[i], cuts[i + 1], tol);
        }
    }
    return total;
}

// ---------------------------------------------------------------------------
// Area density

/// Range of r2 on which a(r1, r2) < 0, or empty.
struct OmegaInterval {
    double r1 = 0.0;
    double lo = 0.0;
    double hi = 0.0;
    bool empty = true;

    [[nodiscard]] bool contains(double r2) const { return !empty && r2 > lo && r2 < hi; }
};

/// True when the r3-cubic has three real roots at (r1, r2).
inline bool has_real_triple(double r1, double r2)
{
    const double s = 1.0 + r2;
    return (1.0 - r2) * s * s * s >= 27.0 * r1;
}

/// Middle root a(r1, r2) of the r3-cubic.
inline double middle_root(double r1, double r2) { return roots::quad_cubic_roots(r1, r2).a; }

/// The r2-range where three real roots exist: (lo, hi) with 0 <= lo < 1/2 < hi < 1.
/// `one_minus_hi` is 1 - hi to full relative precision.
struct StripRange {
    double lo = 0.0;
    double hi = 0.0;
    double one_minus_hi = 0.0;
};

inline StripRange real_triple_range(double r1, double tol = 1e-15)
{
    if (!(r1 > 0.0 && r1 < max_area_sq)) {
        throw domain_error("real_triple_range: r1 outside (0, 1/16)");
    }
    // (1 - r2)(1 + r2)^3 rises to its maximum 27/16 at r2 = 1/2 and falls to 0
    // at 1. With r2 = 1/2 + x its deficit below the maximum is exactly
    // x^2 (9/2 + 4x + x^2), so the edges solve x sqrt(9/2 + 4x + x^2) = -+sqrt(D)
    // with D = 27 (1/16 - r1), free of the cancellation near the maximum.
    const double root_d = std::sqrt(27.0 * (max_area_sq - r1));
    auto signed_root = [](double x) { return x * std::sqrt(4.5 + x * (4.0 + x)); };
    StripRange out;
    if (r1 <= 1.0 / 27.0) {
        out.lo = 0.0;
    } else {
        const double x = roots::find_root_bracketed(
            [&](double t) { return signed_root(t) + root_d; }, -0.5, 0.0, std::min(tol, 1e-300));
        out.lo = 0.5 + x;
    }
    const double x_hi = roots::find_root_bracketed(
        [&](double t) { return signed_root(t) - root_d; }, 0.0, 0.5, std::min(tol, 1e-300));
    if (x_hi < 0.25) {
        out.hi = 0.5 + x_hi;
        out.one_minus_hi = 0.5 - x_hi;
    } else {
        // 1 - hi is O(r1) here; solve u (2 - u)^3 = 27 r1 for it directly
        auto excess_u = [r1](double u) {
            const double s = 2.0 - u;
            return u * s * s * s - 27.0 * r1;
        };
        out.one_minus_hi = roots::find_root_bracketed(excess_u, 0.0, 0.5, std::min(tol, 1e-300));
        out.hi = 1.0 - out.one_minus_hi;
    }
    return out;
}

/// Solves a(r1, r2) = 0 for the two endpoints of the interval where the
/// middle root is negative. A sign scan over the strip where the roots are
/// real locates the brackets; Brent's method refines them.
inline OmegaInterval omega_interval(double r1, double tol = 1e-14)
{
    if (!(r1 > 0.0 && r1 < max_area_sq)) {
        throw domain_error("omega_interval: r1 outside (0, 1/16)");
    }
    OmegaInterval out;
    out.r1 = r1;
    const StripRange strip = real_triple_range(r1);
    auto a_of = [r1](double r2) {
        if (!(r2 > 0.0) || !has_real_triple(r1, r2)) {
            return 1.0;   // outside the strip a is not negative
        }
        return middle_root(r1, r2);
    };
    constexpr int scan = 256;
    const double lo = std::max(strip.lo, 1e-300);
    const double hi = strip.hi;
    double best = 2.0 / 3.0;   // where r2^2 (1 - r2) peaks
    double best_val = a_of(best);
    for (int i = 1; i < scan; ++i) {
        const double r2 = lo + (hi - lo) * i / scan;
        const double v = a_of(r2);
        if (v < best_val) {
            best_val = v;
            best = r2;
        }
    }
    if (!(best_val < 0.0)) {
        return out;
    }
    out.lo = roots::find_root_bracketed(a_of, lo, best, tol);
    out.hi = roots::find_root_bracketed(a_of, best, hi, tol);
    out.empty = false;
    return out;
}

namespace detail {

// a(r1, r2) = 0 is r2^2 (1 - r2) = 4 r1, the triangle cubic at z = r1, so
// the omega endpoints are its two upper roots. The density uses this form
// because it also yields 1 - hi without cancellation.
struct OmegaBounds {
    double lo = 0.0;
    double hi = 0.0;
    double one_minus_hi = 0.0;
    bool empty = true;
};

inline OmegaBounds omega_bounds(double r1)
{
    OmegaBounds out;
    if (!(r1 < 1.0 / 27.0)) {
        return out;
    }
    const roots::CubicRoots w = roots::triangle_cubic_roots(r1);
    out.lo = w.a;
    out.hi = w.b;
    out.one_minus_hi = w.one_minus_b();
    out.empty = false;
    return out;
}

// r3-integral of the joint density 3 / ((1 - r2) sqrt((1-r3)(r3-a)(b-r3)(r3-c)))
// over the admissible part of (max(0, a), b). `om` is 1 - r2.
//
// When r2 + r3 > 1 the side s1 recovered from (r1, r2, r3) is positive only
// if (1 - r2)(1 - r3)(r2 + r3 - 1) < r1. In u = 1 - r3 that is
// u^2 - r2 u + r1 / (1 - r2) > 0, so the band u- < u < u+ is excluded; it is
// nonempty exactly on the omega interval.
inline double strip_integral(double r1, double r2, double om, bool in_omega, double tol)
{
    const double s = 1.0 + r2;
    if (om * s * s * s < 27.0 * r1 * (1.0 - 1e-13)) {
        return 0.0;
    }
    const roots::QuadCubicRoots q = roots::quad_cubic_roots(r1, r2, om);
    const double prefactor = 3.0 / om;

    // integral over r3 in [lo, lo + width] given lo - a and b - (lo + width)
    auto segment = [&](double lo_gap, double width, double hi_gap) {
        if (!(width > 0.0)) {
            return 0.0;
        }
        auto f = [&](double, double dlo, double dhi) {
            const double ra = lo_gap + dlo;
            const double br = hi_gap + dhi;
            const double one_r = q.one_minus_b + br;
            const double rc = q.a_minus_c + ra;
            return 1.0 / std::sqrt(one_r * ra * br * rc);
        };
        return quadrature::integrate_endpoint_singular(f, 0.0, width, tol, {12, 3, tol}).value;
    };

    const double b = 1.0 - q.one_minus_b;
    if (q.a >= 0.0) {
        if (!(q.b_minus_a > 0.0)) {
            // coalesced roots: the integral tends to pi / sqrt((1 - b)(b - c))
            return prefactor * pi / std::sqrt(q.one_minus_b * q.a_minus_c);
        }
        return prefactor * segment(0.0, q.b_minus_a, 0.0);
    }
    if (!in_omega) {
        return prefactor * segment(-q.a, b, 0.0);
    }
    const double disc = std::max(0.0, (r2 * r2 * om - 4.0 * r1) / om);
    const double root = std::sqrt(disc);
    const double u_minus = 2.0 * r1 / (om * (r2 + root));
    const double u_plus = 0.5 * (r2 + root);
    // 1 - u+ = (om + 1 - root) / 2 with 1 - root = (1 - disc) / (1 + root)
    const double q_minus = 0.5 * (om + (om * s + 4.0 * r1 / om) / (1.0 + root));
    double total = 0.0;
    if (u_plus > q.one_minus_b) {
        total += segment(-q.a, q_minus, u_plus - q.one_minus_b);
    } else {
        total += segment(-q.a, b, 0.0);
    }
    // Width of [q+, b] is u- - v with v = 1 - b. Both are near r1 / (1 - r2)
    // for r2 close to 1, so form it from G(u) = u (1 + r2 - u)^2 - 4 r1 / om,
    // which vanishes at v and equals (u- - r1/om)^2 / u- at u-.
    const double v = q.one_minus_b;
    const double k4 = r1 / om;
    const double lead = k4 * (om + u_minus) / u_plus;   // u- - r1/om
    const double g_at = lead * lead / u_minus;
    const double slope = u_minus * u_minus + u_minus * v + v * v - 2.0 * s * (u_minus + v) + s * s;
    const double sliver = g_at / slope;
    if (sliver > 0.0) {
        total += segment(1.0 - u_minus - q.a, sliver, 0.0);
    }
    return prefactor * total;
}

} // namespace detail

/// Density of r1 = area^2 at r1, by iterated quadrature of the joint
/// density of (r1, r2, r3) over r3 (inner) and r2 (outer).
inline double area_marginal_density(double r1, double tol = 1e-10)
{
    if (!(r1 > 0.0 && r1 < max_area_sq)) {
        throw domain_error("area_marginal_density: r1 outside (0, 1/16)");
    }
    if (!(tol > 0.0)) {
        throw domain_error("area_marginal_density: tol must be positive");
    }
    // the density tends to 3 pi^2 / 2 as r1 -> 0 and is within rounding of
    // that limit long before the strip integrals overflow
    r1 = std::max(r1, 1e-30);
    const StripRange strip = real_triple_range(r1);
    const detail::OmegaBounds omega = detail::omega_bounds(r1);

    // Each piece carries both ends and their complements so the width and
    // 1 - r2 stay accurate at either end.
    struct Piece {
        double lo, hi, one_minus_lo, one_minus_hi;
        bool in_omega;
    };
    std::vector<Piece> pieces;
    if (omega.empty) {
        pieces.push_back({strip.lo, strip.hi, 1.0 - strip.lo, strip.one_minus_hi, false});
    } else {
        pieces.push_back({strip.lo, omega.lo, 1.0 - strip.lo, 1.0 - omega.lo, false});
        pieces.push_back({omega.lo, omega.hi, 1.0 - omega.lo, omega.one_minus_hi, true});
        pieces.push_back({omega.hi, strip.hi, omega.one_minus_hi, strip.one_minus_hi, false});
    }

    double total = 0.0;
    for (const Piece& p : pieces) {
        const double width = p.hi < 0.5 ? p.hi - p.lo : p.one_minus_lo - p.one_minus_hi;
        if (!(width > 0.0)) {
            continue;
        }
        auto outer = [&](double, double dlo, double dhi) {
            const bool near_lo = dlo < dhi;
            const double r2 = near_lo ? p.lo + dlo : 1.0 - (p.one_minus_hi + dhi);
            const double om = near_lo ? p.one_minus_lo - dlo : p.one_minus_hi + dhi;
            if (!(r2 > 0.0 && om > 0.0)) {
                return 0.0;
            }
            return detail::strip_integral(r1, r2, om, p.in_omega, 0.1 * tol);
        };
        const auto res = quadrature::integrate_endpoint_singular(outer, 0.0, width, tol, {12, 3, tol});
        if (!res.converged) {
            throw tolerance_not_met("area_marginal_density: outer integral not converged on r2 in ["
                                    + stickdist::detail::fmt_num(p.lo) + ", "
                                    + stickdist::detail::fmt_num(p.hi)
                                    + "] at r1 = " + stickdist::detail::fmt_num(r1));
        }
        total += res.value;
    }
    return std::max(0.0, total);
}

/// Density of the area itself: 2 m * density(m^2).
inline double area_pdf(double area, double tol = 1e-10)
{
    if (!(area > 0.0 && area < max_area)) {
        throw domain_error("quadrilateral::area_pdf: area outside (0, 1/4)");
    }
    return 2.0 * area * area_marginal_density(area * area, tol);
}

/// Integral of h(r1) * density(r1) over (lo, hi), split where the density
/// has kinks (r1 = 1/27, where the omega interval closes).
template <class H>
double integrate_against_density(H&& h, double lo, double hi, double tol = 1e-9)
{
    double total = 0.0;
    const double kink = 1.0 / 27.0;
    auto piece = [&](double a, double b) {
        if (!(b > a)) {
            return 0.0;
        }
        auto f = [&](double r1) {
            if (!(r1 > 0.0 && r1 < max_area_sq)) {
                return 0.0;
            }
            return h(r1) * area_marginal_density(r1, 0.01 * tol);
        };
        return quadrature::integrate_endpoint_singular_or_throw(f, a, b, tol, {12, 3, tol});
    };
    if (lo < kink && hi > kink) {
        total = piece(lo, kink) + piece(kink, hi);
    } else {
        total = piece(lo, hi);
    }
    return total;
}

/// P{area <= m}.
inline double area_cdf(double area, double tol = 1e-9)
{
    if (!(area >= 0.0 && area <= max_area)) {
        throw domain_error("quadrilateral::area_cdf: area outside [0, 1/4]");
    }
    if (area == 0.0) {
        return 0.0;
    }
    if (area == max_area) {
        return 1.0;
    }
    return integrate_against_density([](double) { return 1.0; }, 0.0, area * area, tol);
}

// ---------------------------------------------------------------------------
// Monte Carlo

/// Four pieces in stick order from three uniform breaks of the canonical stick.
inline QuadSides break_stick(mc::Stream& stream)
{
    std::array<double, 3> u{stream.uniform(2.0), stream.uniform(2.0), stream.uniform(2.0)};
    std::sort(u.begin(), u.end());
    return {u[0], u[1] - u[0], u[2] - u[1], 2.0 - u[2]};
}

inline bool formable(const QuadSides& q)
{
    return q.s1 < 1.0 && q.s2 < 1.0 && q.s3 < 1.0 && q.s4 < 1.0 && q.s1 > 0 && q.s2 > 0 && q.s3 > 0
           && q.s4 > 0;
}

inline mc::SampleStats make_area_stats(bool keep_values, std::size_t bins = 200)
{
    mc::SampleStats s;
    s.histogram = mc::Histogram(0.0, max_area, bins);
    s.keep_values = keep_values;
    return s;
}

inline mc::SampleStats make_angle_stats(bool keep_values, std::size_t bins = 200)
{
    mc::SampleStats s;
    s.histogram = mc::Histogram(0.0, pi, bins);
    s.keep_values = keep_values;
    return s;
}

inline void sample_area_into(mc::Stream& stream, std::uint64_t count, mc::SampleStats& stats)
{
    for (std::uint64_t i = 0; i < count; ++i) {
        stats.record_trial();
        const QuadSides q = break_stick(stream);
        if (formable(q)) {
            stats.record_value(std::sqrt((1.0 - q.s1) * (1.0 - q.s2) * (1.0 - q.s3) * (1.0 - q.s4)));
        }
    }
}

/// Records alpha1 (the angle between s3 and s4) of each formable sample.
inline void sample_angle_into(mc::Stream& stream, std::uint64_t count, mc::SampleStats& stats)
{
    for (std::uint64_t i = 0; i < count; ++i) {
        stats.record_trial();
        const QuadSides q = break_stick(stream);
        if (formable(q)) {
            const double s1 = q.s1, s2 = q.s2, s3 = q.s3, s4 = q.s4;
            const double c = (s3 * s3 + s4 * s4 - s1 * s1 - s2 * s2) / (2.0 * (s3 * s4 + s1 * s2));
            stats.record_value(std::acos(std::clamp(c, -1.0, 1.0)));
        }
    }
}

inline mc::SampleStats sample_area(std::uint64_t seed, std::uint64_t count, unsigned workers,
                                   bool keep_values = false)
{
    if (count < 1) {
        throw domain_error("quadrilateral::sample_area: count must be >= 1");
    }
    return mc::run_parallel(mc::Stream(seed), count, workers, make_area_stats(keep_values),
                            sample_area_into);
}

inline mc::SampleStats sample_angle(std::uint64_t seed, std::uint64_t count, unsigned workers,
                                    bool keep_values = false)
{
    if (count < 1) {
        throw domain_error("quadrilateral::sample_angle: count must be >= 1");
    }
    return mc::run_parallel(mc::Stream(seed), count, workers, make_angle_stats(keep_values),
                            sample_angle_into);
}

// ---------------------------------------------------------------------------
// Median

enum class MedianMode { numeric, montecarlo };

struct MedianResult {
    double median = 0.0;
    double error = 0.0;          // one-sigma (MC) or propagated tolerance (numeric)
    std::uint64_t samples = 0;   // MC trials, 0 for numeric
};

/// Median area by root finding on the numeric area CDF.
inline MedianResult numeric_median(double tol = 1e-8)
{
    if (!(tol > 0.0)) {
        throw domain_error("numeric_median: tol must be positive");
    }
    // the CDF quadrature is accurate to ~1e-13 already at tolerance 1e-12;
    // asking for less makes the nested density tolerances impractical
    const double cdf_tol = std::max(0.1 * tol, 1e-12);
    const double m = roots::find_root_bracketed(
        [cdf_tol](double area) { return area_cdf(area, cdf_tol) - 0.5; }, 0.12, 0.22, tol);
    // CDF error cdf_tol moves the root by about cdf_tol / pdf(m)
    const double pdf_m = area_pdf(m);
    return {m, tol + cdf_tol / pdf_m, 0};
}

/// Median of Brahmagupta areas over `count` broken sticks.
inline MedianResult montecarlo_median(std::uint64_t seed, std::uint64_t count, unsigned workers)
{
    const mc::SampleStats s = sample_area(seed, count, workers, true);
    const mc::MedianEstimate e = mc::empirical_median(s.values);
    return {e.median, e.error, s.trials};
}

inline MedianResult quad_median_area(MedianMode mode, std::uint64_t budget, double tol,
                                     std::uint64_t seed = 1, unsigned workers = 1)
{
    if (budget == 0) {
        throw domain_error("quad_median_area: budget must be positive");
    }
    return mode == MedianMode::numeric ? numeric_median(tol) : montecarlo_median(seed, budget, workers);
}

} // namespace stickdist::quadrilateral
