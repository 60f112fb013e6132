#pragma once

// Complete elliptic integrals K[m], E[m], Pi[n, m] in the parameter
// convention (m multiplies tau^2), evaluated through Carlson's symmetric
// forms R_F, R_D, R_J with the duplication theorem.

#include <algorithm>
#include <cmath>
#include <numbers>

#include "errors.hpp"

namespace stickdist::specfun {

/// Parameter set for a complete elliptic integral. `n` is only meaningful
/// for the third kind.
struct EllipticArgs {
    double m = 0.0;
    double n = 0.0;

    [[nodiscard]] bool valid_first_kind() const { return std::isfinite(m) && m < 1.0; }
    [[nodiscard]] bool valid_second_kind() const { return std::isfinite(m) && m <= 1.0; }
    [[nodiscard]] bool valid_third_kind() const
    {
        return valid_first_kind() && std::isfinite(n) && n < 1.0;
    }
};

namespace detail {

// Relative truncation target for the duplication loops. The Taylor
// tails below are of fifth/seventh order so this leaves the result
// limited by rounding.
inline constexpr double carlson_r = 1e-16;

// R_C(1, 1 + e), the only degenerate form R_J needs.
inline double rc_one(double e)
{
    if (std::abs(e) < 1e-4) {
        // 1 - e/3 + e^2/5 - e^3/7 + e^4/9
        return 1.0 + e * (-1.0 / 3 + e * (1.0 / 5 + e * (-1.0 / 7 + e / 9)));
    }
    if (e > 0) {
        const double s = std::sqrt(e);
        return std::atan(s) / s;
    }
    const double s = std::sqrt(-e);
    return std::atanh(s) / s;
}

} // namespace detail

/// Carlson R_F(x, y, z); at most one argument may be zero.
inline double carlson_rf(double x, double y, double z)
{
    if (!(x >= 0 && y >= 0 && z >= 0) || (x + y == 0) || (x + z == 0) || (y + z == 0)) {
        throw domain_error("carlson_rf: arguments must be nonnegative with at most one zero");
    }
    const double x0 = x, y0 = y, z0 = z;
    double a = (x + y + z) / 3.0;
    const double a0 = a;
    const double q = std::pow(3.0 * detail::carlson_r, -1.0 / 6.0)
                     * std::max({std::abs(a0 - x), std::abs(a0 - y), std::abs(a0 - z)});
    double scale = 1.0; // 4^-n
    while (scale * q >= std::abs(a)) {
        const double sx = std::sqrt(x), sy = std::sqrt(y), sz = std::sqrt(z);
        const double lambda = sx * sy + sx * sz + sy * sz;
        x = 0.25 * (x + lambda);
        y = 0.25 * (y + lambda);
        z = 0.25 * (z + lambda);
        a = 0.25 * (a + lambda);
        scale *= 0.25;
    }
    const double dx = (a0 - x0) * scale / a;
    const double dy = (a0 - y0) * scale / a;
    const double dz = -dx - dy;
    const double e2 = dx * dy - dz * dz;
    const double e3 = dx * dy * dz;
    return (1.0 - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0 - 3.0 * e2 * e3 / 44.0) / std::sqrt(a);
}

/// Carlson R_D(x, y, z) = R_J(x, y, z, z); requires z > 0 and x + y > 0.
inline double carlson_rd(double x, double y, double z)
{
    if (!(x >= 0 && y >= 0 && z > 0) || (x + y == 0)) {
        throw domain_error("carlson_rd: invalid arguments");
    }
    const double x0 = x, y0 = y;
    double a = (x + y + 3.0 * z) / 5.0;
    const double a0 = a;
    const double q = std::pow(0.25 * detail::carlson_r, -1.0 / 6.0)
                     * std::max({std::abs(a0 - x), std::abs(a0 - y), std::abs(a0 - z)});
    double scale = 1.0;
    double sum = 0.0;
    while (scale * q >= std::abs(a)) {
        const double sx = std::sqrt(x), sy = std::sqrt(y), sz = std::sqrt(z);
        const double lambda = sx * sy + sx * sz + sy * sz;
        sum += scale / (sz * (z + lambda));
        x = 0.25 * (x + lambda);
        y = 0.25 * (y + lambda);
        z = 0.25 * (z + lambda);
        a = 0.25 * (a + lambda);
        scale *= 0.25;
    }
    const double dx = (a0 - x0) * scale / a;
    const double dy = (a0 - y0) * scale / a;
    const double dz = -(dx + dy) / 3.0;
    const double xy = dx * dy, z2 = dz * dz;
    const double e2 = xy - 6.0 * z2;
    const double e3 = (3.0 * xy - 8.0 * z2) * dz;
    const double e4 = 3.0 * (xy - z2) * z2;
    const double e5 = xy * z2 * dz;
    const double series = 1.0 - 3.0 * e2 / 14.0 + e3 / 6.0 + 9.0 * e2 * e2 / 88.0 - 3.0 * e4 / 22.0
                          - 9.0 * e2 * e3 / 52.0 + 3.0 * e5 / 26.0;
    return scale * series / (a * std::sqrt(a)) + 3.0 * sum;
}

/// Carlson R_J(x, y, z, p) for p > 0 and at most one of x, y, z zero.
inline double carlson_rj(double x, double y, double z, double p)
{
    if (!(x >= 0 && y >= 0 && z >= 0 && p > 0) || (x + y == 0) || (x + z == 0) || (y + z == 0)) {
        throw domain_error("carlson_rj: invalid arguments");
    }
    const double x0 = x, y0 = y, z0 = z;
    double a = (x + y + z + 2.0 * p) / 5.0;
    const double a0 = a;
    const double delta = (p - x) * (p - y) * (p - z);
    const double q = std::pow(0.25 * detail::carlson_r, -1.0 / 6.0)
                     * std::max({std::abs(a0 - x), std::abs(a0 - y), std::abs(a0 - z),
                                 std::abs(a0 - p)});
    double scale = 1.0;     // 4^-m
    double scale3 = 1.0;    // 4^-3m
    double sum = 0.0;
    while (scale * q >= std::abs(a)) {
        const double sx = std::sqrt(x), sy = std::sqrt(y), sz = std::sqrt(z), sp = std::sqrt(p);
        const double lambda = sx * sy + sx * sz + sy * sz;
        const double d = (sp + sx) * (sp + sy) * (sp + sz);
        const double e = scale3 * delta / (d * d);
        sum += scale / d * detail::rc_one(e);
        x = 0.25 * (x + lambda);
        y = 0.25 * (y + lambda);
        z = 0.25 * (z + lambda);
        p = 0.25 * (p + lambda);
        a = 0.25 * (a + lambda);
        scale *= 0.25;
        scale3 *= 1.0 / 64.0;
    }
    const double dx = (a0 - x0) * scale / a;
    const double dy = (a0 - y0) * scale / a;
    const double dz = (a0 - z0) * scale / a;
    const double dp = -(dx + dy + dz) / 2.0;
    const double e2 = dx * dy + dx * dz + dy * dz - 3.0 * dp * dp;
    const double e3 = dx * dy * dz + 2.0 * e2 * dp + 4.0 * dp * dp * dp;
    const double e4 = (2.0 * dx * dy * dz + e2 * dp + 3.0 * dp * dp * dp) * dp;
    const double e5 = dx * dy * dz * dp * dp;
    const double series = 1.0 - 3.0 * e2 / 14.0 + e3 / 6.0 + 9.0 * e2 * e2 / 88.0 - 3.0 * e4 / 22.0
                          - 9.0 * e2 * e3 / 52.0 + 3.0 * e5 / 26.0;
    return scale * series / (a * std::sqrt(a)) + 6.0 * sum;
}

/// Complete elliptic integral of the first kind, K[m] = R_F(0, 1 - m, 1).
inline double ellip_k(double m)
{
    if (!EllipticArgs{m}.valid_first_kind()) {
        throw domain_error("ellip_k: requires finite m < 1, got " + stickdist::detail::fmt_num(m));
    }
    return carlson_rf(0.0, 1.0 - m, 1.0);
}

/// Complete elliptic integral of the second kind; E[1] = 1.
inline double ellip_e(double m)
{
    if (!EllipticArgs{m}.valid_second_kind()) {
        throw domain_error("ellip_e: requires finite m <= 1, got " + stickdist::detail::fmt_num(m));
    }
    if (m == 1.0) {
        return 1.0;
    }
    const double y = 1.0 - m;
    if (m == 0.0) {
        return std::numbers::pi / 2;
    }
    return carlson_rf(0.0, y, 1.0) - m / 3.0 * carlson_rd(0.0, y, 1.0);
}

/// Complete elliptic integral of the third kind with characteristic n.
inline double ellip_pi(double n, double m)
{
    if (!EllipticArgs{m, n}.valid_third_kind()) {
        throw domain_error("ellip_pi: requires n < 1 and m < 1, got n = "
                           + stickdist::detail::fmt_num(n) + ", m = " + stickdist::detail::fmt_num(m));
    }
    const double y = 1.0 - m;
    const double rf = carlson_rf(0.0, y, 1.0);
    if (n == 0.0) {
        return rf;
    }
    return rf + n / 3.0 * carlson_rj(0.0, y, 1.0, 1.0 - n);
}

/// K[m] given the complementary parameter mc = 1 - m, for m close to 1
/// where forming m first would lose the digits of mc.
inline double ellip_k_mc(double mc)
{
    if (!(mc > 0.0) || !std::isfinite(mc)) {
        throw domain_error("ellip_k_mc: requires finite mc > 0");
    }
    return carlson_rf(0.0, mc, 1.0);
}

/// E[m] given mc = 1 - m.
inline double ellip_e_mc(double mc)
{
    if (!(mc >= 0.0) || !std::isfinite(mc)) {
        throw domain_error("ellip_e_mc: requires finite mc >= 0");
    }
    if (mc == 0.0) {
        return 1.0;
    }
    return carlson_rf(0.0, mc, 1.0) - (1.0 - mc) / 3.0 * carlson_rd(0.0, mc, 1.0);
}

/// Pi[n, m] given nc = 1 - n and mc = 1 - m.
inline double ellip_pi_mc(double nc, double mc)
{
    if (!(mc > 0.0 && nc > 0.0) || !std::isfinite(mc) || !std::isfinite(nc)) {
        throw domain_error("ellip_pi_mc: requires finite nc > 0 and mc > 0");
    }
    const double n = 1.0 - nc;
    const double rf = carlson_rf(0.0, mc, 1.0);
    if (n == 0.0) {
        return rf;
    }
    return rf + n / 3.0 * carlson_rj(0.0, mc, 1.0, nc);
}

} // namespace stickdist::specfun
