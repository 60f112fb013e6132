#pragma once

// Slow, independently coded reference computations used by the unit tests
// and the acceptance checks. None of these reuse the evaluation paths they
// are compared against.

#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <utility>
#include <vector>

#include "stickdist/stickdist.hpp"

namespace oracle {

constexpr double pi = std::numbers::pi;

/// K[m] = pi / (2 AGM(1, sqrt(1 - m))).
inline double agm_k(double m)
{
    double a = 1.0, g = std::sqrt(1.0 - m);
    for (int i = 0; i < 60 && std::abs(a - g) > 1e-17 * a; ++i) {
        const double an = 0.5 * (a + g);
        g = std::sqrt(a * g);
        a = an;
    }
    return pi / (2.0 * a);
}

// Trapezoid rule on [0, pi/2] in theta (tau = sin theta). The integrands
// are smooth, even and pi-periodic, so the rule converges geometrically.
inline double theta_trapezoid(const std::function<double(double)>& g, int panels = 20000)
{
    const double h = 0.5 * pi / panels;
    double s = 0.5 * (g(0.0) + g(0.5 * pi));
    for (int i = 1; i < panels; ++i) {
        s += g(i * h);
    }
    return s * h;
}

inline double brute_k(double m)
{
    return theta_trapezoid([m](double t) {
        const double s = std::sin(t);
        return 1.0 / std::sqrt(1.0 - m * s * s);
    });
}

inline double brute_e(double m)
{
    return theta_trapezoid([m](double t) {
        const double s = std::sin(t);
        return std::sqrt(1.0 - m * s * s);
    });
}

inline double brute_pi(double n, double m)
{
    return theta_trapezoid([n, m](double t) {
        const double s2 = std::sin(t) * std::sin(t);
        return 1.0 / ((1.0 - n * s2) * std::sqrt(1.0 - m * s2));
    });
}

/// Plain bisection to the last representable bracket.
inline double bisect(const std::function<double(double)>& f, double lo, double hi)
{
    double flo = f(lo);
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) {
            break;
        }
        const double fm = f(mid);
        if ((fm > 0) == (flo > 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

struct Triple {
    double c, a, b;
};

/// Roots of (1 - w) w^2 - 4z by bisection on the brackets [-1, 0],
/// [0, 2/3] and [2/3, 1].
inline Triple cubic_by_bisection(double z)
{
    auto f = [z](double w) { return (1.0 - w) * w * w - 4.0 * z; };
    return {bisect(f, -1.0, 0.0), bisect(f, 0.0, 2.0 / 3.0), bisect(f, 2.0 / 3.0, 1.0)};
}

/// P{area > zeta} as 4 times the integral of
/// sqrt((1 - t^2)^2 t^2 - 4 zeta^2) over [alpha, beta], by tanh-sinh.
/// The radicand is used in the factored form
/// (t^2 - alpha^2)(beta^2 - t^2)(gamma^2 - t^2).
inline double student_survival(double zeta)
{
    const auto r = stickdist::roots::triangle_cubic_roots(zeta * zeta);
    const double alpha = std::sqrt(r.one_minus_b());
    const double beta = std::sqrt(r.one_minus_a());
    const double gamma2 = r.one_minus_c();
    auto f = [&](double t, double dlo, double dhi) {
        const double v = dlo * (t + alpha) * dhi * (beta + t) * (gamma2 - t * t);
        return v > 0.0 ? std::sqrt(v) : 0.0;
    };
    return 4.0 * stickdist::quadrature::integrate_endpoint_singular_or_throw(f, alpha, beta, 1e-14);
}

/// Density of z = area^2 as the w-integral of
/// 4 / (sqrt(1 - w) sqrt((1 - w) w^2 - 4z)) over [a, b].
inline double w_integral(double z)
{
    const auto r = stickdist::roots::triangle_cubic_roots(z);
    auto f = [&](double w, double dlo, double dhi) {
        return 4.0 / std::sqrt((1.0 - w) * dlo * dhi * (w - r.c));
    };
    return stickdist::quadrature::integrate_endpoint_singular_or_throw(f, r.a, r.b, 1e-13);
}

/// Shoelace area of a random closed polygon with the given sides, or a
/// negative value if the random directions chosen admit no closure. The
/// first n - 2 sides take random directions; the last two close the
/// polygon through a circle intersection.
inline double random_closure_area(const std::vector<double>& p, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> angle(0.0, 2.0 * pi);
    const std::size_t n = p.size();
    std::vector<std::pair<double, double>> v{{0.0, 0.0}};
    double x = 0.0, y = 0.0;
    for (std::size_t i = 0; i + 2 < n; ++i) {
        const double th = angle(rng);
        x += p[i] * std::cos(th);
        y += p[i] * std::sin(th);
        v.emplace_back(x, y);
    }
    // vertex q with |q - (x, y)| = p[n-2] and |q| = p[n-1]
    const double d = std::hypot(x, y);
    const double r1 = p[n - 2], r2 = p[n - 1];
    if (d > r1 + r2 || d < std::abs(r1 - r2) || d == 0.0) {
        return -1.0;
    }
    const double along = (d * d + r1 * r1 - r2 * r2) / (2.0 * d);
    const double h = std::sqrt(std::max(0.0, r1 * r1 - along * along));
    const double ux = -x / d, uy = -y / d;
    const double sign = std::uniform_int_distribution<int>(0, 1)(rng) ? 1.0 : -1.0;
    v.emplace_back(x + along * ux - sign * h * uy, y + along * uy + sign * h * ux);
    double twice = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const auto& [x1, y1] = v[i];
        const auto& [x2, y2] = v[(i + 1) % v.size()];
        twice += x1 * y2 - x2 * y1;
    }
    return 0.5 * std::abs(twice);
}

/// Places the vertices on the circle of the solution and returns the
/// largest mismatch between chord lengths and pieces, including the
/// closure gap.
inline double chord_residual(const std::vector<double>& p, const stickdist::ngon::CyclicSolution& s)
{
    const std::size_t imax =
        static_cast<std::size_t>(std::max_element(p.begin(), p.end()) - p.begin());
    double theta = 0.0;
    double px = s.circumradius, py = 0.0;
    double worst = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double step = (i == imax && !s.center_inside) ? -s.central_angles[i] : s.central_angles[i];
        theta += step;
        const double qx = s.circumradius * std::cos(theta);
        const double qy = s.circumradius * std::sin(theta);
        worst = std::max(worst, std::abs(std::hypot(qx - px, qy - py) - p[i]));
        px = qx;
        py = qy;
    }
    return std::max(worst, std::hypot(px - s.circumradius, py));
}

/// Second-order central difference with one Richardson step.
inline double derivative(const std::function<double(double)>& f, double x, double h)
{
    const double d1 = (f(x + h) - f(x - h)) / (2.0 * h);
    const double d2 = (f(x + 0.5 * h) - f(x - 0.5 * h)) / h;
    return (4.0 * d2 - d1) / 3.0;
}

} // namespace oracle
