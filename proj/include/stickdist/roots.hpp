#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <utility>

#include "errors.hpp"

namespace stickdist::roots {

/// Ordered real roots c < a <= b of w^3 - w^2 + 4z = 0, i.e. of
/// (1 - w) w^2 - 4z = 0, for 0 < z <= 1/27.
///
/// The roots are parameterised by the trigonometric angle
/// phi = arccos(1 - 54 z), which is kept so the differences that the
/// densities need (1 - b, b - a, ...) can be formed without cancellation.
struct CubicRoots {
    double c = 0.0;
    double a = 0.0;
    double b = 0.0;
    double z = 0.0;
    double phi = 0.0;            // in [0, pi]
    double pi_minus_phi = 0.0;   // pi - phi, accurate near the double root

    [[nodiscard]] double one_minus_b() const
    {
        const double s = std::sin(phi / 6.0);
        return 4.0 / 3.0 * s * s;
    }
    [[nodiscard]] double one_minus_a() const { return 1.0 - a; }
    [[nodiscard]] double one_minus_c() const { return 1.0 - c; }
    [[nodiscard]] double b_minus_a() const
    {
        return 2.0 / std::numbers::sqrt3 * std::sin(pi_minus_phi / 3.0);
    }
    [[nodiscard]] double b_minus_c() const { return b - c; }
};

/// Roots of (1 - r2)(1 - r3)(r2 + r3)^2 - 4 r1 in r3.
struct QuadCubicRoots {
    double c = 0.0;
    double a = 0.0;   // may be negative
    double b = 0.0;
    double r1 = 0.0;
    double r2 = 0.0;
    double one_minus_b = 0.0;
    double b_minus_a = 0.0;
    double a_minus_c = 0.0;
};

/// Roots of the broken-stick cubic (1 - w) w^2 - 4z for 0 < z <= 1/27.
inline CubicRoots triangle_cubic_roots(double z)
{
    if (!(z > 0.0 && z <= 1.0 / 27.0)) {
        throw domain_error("triangle_cubic_roots: need 0 < z <= 1/27, got " + detail::fmt_num(z));
    }
    // Shift w = 1/3 + s gives s^3 - s/3 + (4z - 2/27) = 0, whose roots are
    // s_k = (2/3) cos((phi - 2 pi k) / 3) with cos(phi) = 1 - 54 z.
    // sin^2(phi/2) = 27 z and cos^2(phi/2) = 1 - 27 z avoid the arccos loss.
    const double t = 27.0 * z;
    double phi = 0.0;
    double pmp = 0.0;
    if (t <= 0.5) {
        phi = 2.0 * std::asin(std::sqrt(t));
        pmp = std::numbers::pi - phi;
    } else {
        pmp = 2.0 * std::asin(std::sqrt(std::max(0.0, 1.0 - t)));
        phi = std::numbers::pi - pmp;
    }
    const double psi = phi / 3.0;
    const double h = std::sin(psi / 2.0);
    constexpr double third_pi = std::numbers::pi / 3.0;

    CubicRoots r;
    r.z = z;
    r.phi = phi;
    r.pi_minus_phi = pmp;
    r.b = 1.0 / 3.0 + 2.0 / 3.0 * std::cos(psi);
    r.a = 4.0 / 3.0 * h * std::sin(third_pi + psi / 2.0);
    r.c = -4.0 / 3.0 * h * std::sin(third_pi - psi / 2.0);
    if (r.a > r.b) {
        std::swap(r.a, r.b);
    }
    return r;
}

/// Roots in r3 of (1 - r2)(1 - r3)(r2 + r3)^2 - 4 r1.
///
/// Substituting r3 = (1 + r2) w - r2 turns the polynomial into the
/// triangle cubic with parameter r1 / ((1 - r2)(1 + r2)^3), so three real
/// roots exist exactly when that parameter is at most 1/27.
///
/// `one_minus_r2` may be supplied when 1 - r2 is known more accurately than
/// the difference formed from r2.
inline QuadCubicRoots quad_cubic_roots(double r1, double r2, double one_minus_r2)
{
    // r2 may round to 1 when one_minus_r2 is below an ulp of 1
    if (!(r2 > 0.0 && r2 <= 1.0) || !(one_minus_r2 > 0.0 && one_minus_r2 <= 1.0) || !(r1 > 0.0)
        || !std::isfinite(r1)) {
        throw domain_error("quad_cubic_roots: need r1 > 0 and 0 < r2 < 1");
    }
    const double scale = 1.0 + r2;
    double zeq = r1 / (one_minus_r2 * scale * scale * scale);
    // a few ulps above 1/27 is rounding at the edge of the strip
    if (zeq > 1.0 / 27.0 && zeq <= 1.0 / 27.0 * (1.0 + 1e-13)) {
        zeq = 1.0 / 27.0;
    }
    if (zeq > 1.0 / 27.0) {
        throw no_real_triple("quad_cubic_roots: fewer than three real roots at r1 = "
                             + detail::fmt_num(r1) + ", r2 = " + detail::fmt_num(r2));
    }
    const CubicRoots w = triangle_cubic_roots(zeq);
    QuadCubicRoots q;
    q.r1 = r1;
    q.r2 = r2;
    q.c = scale * w.c - r2;
    q.a = scale * w.a - r2;
    q.b = scale * w.b - r2;
    q.one_minus_b = scale * w.one_minus_b();
    q.b_minus_a = scale * w.b_minus_a();
    q.a_minus_c = scale * (w.a - w.c);
    return q;
}

inline QuadCubicRoots quad_cubic_roots(double r1, double r2)
{
    if (!(r2 < 1.0)) {
        throw domain_error("quad_cubic_roots: need r1 > 0 and 0 < r2 < 1");
    }
    return quad_cubic_roots(r1, r2, 1.0 - r2);
}

/// Evaluates (1 - r2)(1 - r3)(r2 + r3)^2 - 4 r1.
inline double quad_cubic(double r1, double r2, double r3)
{
    const double s = r2 + r3;
    return (1.0 - r2) * (1.0 - r3) * s * s - 4.0 * r1;
}

/// Brent's method on a sign-changing bracket. Terminates once the bracket
/// is narrower than max(tol, 4 ulp) or an exact zero is hit.
template <class F>
double find_root_bracketed(F&& f, double lo, double hi, double tol)
{
    if (!(tol > 0.0)) {
        throw domain_error("find_root_bracketed: tol must be positive");
    }
    auto eval = [&](double x) {
        const double v = static_cast<double>(f(x));
        if (!std::isfinite(v)) {
            throw non_finite("find_root_bracketed: f(" + detail::fmt_num(x) + ") is not finite");
        }
        return v;
    };
    double a = lo, b = hi;
    double fa = eval(a), fb = eval(b);
    if (fa == 0.0) {
        return a;
    }
    if (fb == 0.0) {
        return b;
    }
    if ((fa > 0) == (fb > 0)) {
        throw no_sign_change("find_root_bracketed: f has the same sign at " + detail::fmt_num(lo)
                             + " and " + detail::fmt_num(hi));
    }
    constexpr double eps = std::numeric_limits<double>::epsilon();
    double c = a, fc = fa;
    double d = b - a, e = d;
    for (int iter = 0; iter < 500; ++iter) {
        if ((fb > 0) == (fc > 0)) {
            c = a;
            fc = fa;
            d = e = b - a;
        }
        if (std::abs(fc) < std::abs(fb)) {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        const double tol1 = 0.5 * std::max(tol, 4.0 * eps * std::abs(b));
        const double xm = 0.5 * (c - b);
        if (std::abs(xm) <= tol1 || fb == 0.0) {
            return b;
        }
        if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
            // inverse quadratic interpolation, or secant when a == c
            double p, q;
            const double s = fb / fa;
            if (a == c) {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                const double qa = fa / fc;
                const double r = fb / fc;
                p = s * (2.0 * xm * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0) {
                q = -q;
            }
            p = std::abs(p);
            if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol1 * q), std::abs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += (std::abs(d) > tol1) ? d : (xm > 0 ? tol1 : -tol1);
        fb = eval(b);
    }
    throw no_convergence("find_root_bracketed: iteration limit reached");
}

} // namespace stickdist::roots
