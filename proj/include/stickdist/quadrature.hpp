#pragma once

// One-dimensional integrators.
//
//  - integrate_adaptive: globally adaptive Gauss-Kronrod (7/15) with
//    QUADPACK-style error estimates, for integrands smooth inside the
//    interval.
//  - integrate_endpoint_singular: tanh-sinh (double exponential) rule for
//    integrands with algebraic or logarithmic endpoint singularities.
//    The integrand may take either (x) or (x, x - lo, hi - x); the second
//    form receives endpoint distances that are exact even when x itself
//    rounds onto an endpoint.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <queue>
#include <type_traits>
#include <vector>

#include "errors.hpp"

namespace stickdist::quadrature {

struct QuadratureResult {
    double value = 0.0;
    double abs_error_estimate = 0.0;
    long evaluations = 0;
    bool converged = true;   // false: budget exhausted, value is best estimate
};

struct AdaptiveOptions {
    double rel_tol = 0.0;
    long max_evaluations = 1'000'000;
};

namespace detail {

inline constexpr double gk_nodes[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double kronrod_weights[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for gk_nodes[1], [3], [5], [7]
inline constexpr double gauss_weights[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double lo, hi, value, error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

template <class F>
double checked(F& f, double x)
{
    const double v = static_cast<double>(f(x));
    if (!std::isfinite(v)) {
        throw non_finite("quadrature: integrand is not finite at x = " + stickdist::detail::fmt_num(x));
    }
    return v;
}

template <class F>
Panel gk15(F& f, double lo, double hi)
{
    const double center = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    const double fc = checked(f, center);
    double resg = fc * gauss_weights[3];
    double resk = fc * kronrod_weights[7];
    double resabs = std::abs(resk);
    double fv1[7], fv2[7];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * gk_nodes[j];
        const double f1 = checked(f, center - dx);
        const double f2 = checked(f, center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        resk += kronrod_weights[j] * (f1 + f2);
        resabs += kronrod_weights[j] * (std::abs(f1) + std::abs(f2));
        if (j % 2 == 1) {
            resg += gauss_weights[j / 2] * (f1 + f2);
        }
    }
    const double mean = 0.5 * resk;
    double resasc = kronrod_weights[7] * std::abs(fc - mean);
    for (int j = 0; j < 7; ++j) {
        resasc += kronrod_weights[j] * (std::abs(fv1[j] - mean) + std::abs(fv2[j] - mean));
    }
    resasc *= std::abs(half);
    resabs *= std::abs(half);
    const double result = resk * half;
    double err = std::abs((resk - resg) * half);
    if (resasc != 0.0 && err != 0.0) {
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    }
    constexpr double eps = std::numeric_limits<double>::epsilon();
    if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) {
        err = std::max(50.0 * eps * resabs, err);
    }
    return {lo, hi, result, err};
}

} // namespace detail

/// Adaptive Gauss-Kronrod integration of f over [lo, hi] to absolute
/// tolerance `tol` (or `options.rel_tol * |value|` when that is larger).
template <class F>
QuadratureResult integrate_adaptive(F&& f, double lo, double hi, double tol,
                                    const AdaptiveOptions& options = {})
{
    if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
        throw domain_error("integrate_adaptive: need finite lo < hi");
    }
    if (!(tol > 0.0)) {
        throw domain_error("integrate_adaptive: tol must be positive");
    }
    std::priority_queue<detail::Panel> heap;
    std::vector<detail::Panel> frozen;   // too narrow to bisect further
    heap.push(detail::gk15(f, lo, hi));
    long evals = 15;
    double total = heap.top().value;
    double error = heap.top().error;

    auto target = [&] { return std::max(tol, options.rel_tol * std::abs(total)); };
    bool converged = true;
    while (!heap.empty() && error > target()) {
        if (evals + 30 > options.max_evaluations) {
            converged = false;
            break;
        }
        const detail::Panel worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.lo + worst.hi);
        if (!(worst.lo < mid && mid < worst.hi)
            || (worst.hi - worst.lo) < 64 * std::numeric_limits<double>::epsilon() * std::abs(mid)) {
            frozen.push_back(worst);
            continue;
        }
        const detail::Panel left = detail::gk15(f, worst.lo, mid);
        const detail::Panel right = detail::gk15(f, mid, worst.hi);
        evals += 30;
        total += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }
    // re-sum to shed the drift of incremental updates
    double value = 0.0, err = 0.0;
    for (const auto& p : frozen) {
        value += p.value;
        err += p.error;
    }
    while (!heap.empty()) {
        value += heap.top().value;
        err += heap.top().error;
        heap.pop();
    }
    if (err > std::max(tol, options.rel_tol * std::abs(value))) {
        converged = false;
    }
    return {value, err, evals, converged};
}

/// As integrate_adaptive but throws tolerance_not_met instead of
/// returning an unconverged estimate.
template <class F>
double integrate_adaptive_or_throw(F&& f, double lo, double hi, double tol,
                                   const AdaptiveOptions& options = {})
{
    const auto r = integrate_adaptive(f, lo, hi, tol, options);
    if (!r.converged) {
        throw tolerance_not_met("integrate_adaptive: tolerance " + stickdist::detail::fmt_num(tol)
                                + " not met on [" + stickdist::detail::fmt_num(lo) + ", "
                                + stickdist::detail::fmt_num(hi) + "], estimate "
                                + stickdist::detail::fmt_num(r.abs_error_estimate));
    }
    return r.value;
}

struct TanhSinhOptions {
    int max_level = 12;
    int min_level = 3;
    double rel_tol = 0.0;
};

/// Tanh-sinh quadrature on [lo, hi]. Step h = 2^-k at level k; each level
/// reuses the previous nodes. Stops when successive levels differ by at
/// most max(tol, rel_tol * |value|).
template <class F>
QuadratureResult integrate_endpoint_singular(F&& f, double lo, double hi, double tol,
                                             const TanhSinhOptions& options = {})
{
    if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
        throw domain_error("integrate_endpoint_singular: need finite lo < hi");
    }
    if (!(tol > 0.0)) {
        throw domain_error("integrate_endpoint_singular: tol must be positive");
    }
    constexpr bool with_distances = std::is_invocable_v<F&, double, double, double>;
    constexpr double half_pi = std::numbers::pi / 2;
    // Beyond this t the node sits within 1e-300 * width of an endpoint.
    constexpr double t_max = 6.1;

    const double width = hi - lo;
    const double hw = 0.5 * width;
    const double center = lo + hw;
    long evals = 0;

    auto call = [&](double x, double dlo, double dhi) -> double {
        double v;
        if constexpr (with_distances) {
            v = static_cast<double>(f(x, dlo, dhi));
        } else {
            v = static_cast<double>(f(x));
        }
        ++evals;
        if (!std::isfinite(v)) {
            throw non_finite("integrate_endpoint_singular: integrand is not finite at x = "
                             + stickdist::detail::fmt_num(x));
        }
        return v;
    };

    // Sum over nodes t = offset + j * step, j = 0, 1, ..., both signs.
    // Returns the weighted sum without the step factor.
    auto sweep = [&](double offset, double step, double scale_hint) {
        double sum = 0.0;
        for (double t = offset; t <= t_max; t += step) {
            const double u = half_pi * std::sinh(t);
            const double ex = std::exp(-2.0 * u);
            const double dist = width * ex / (1.0 + ex);   // hw * (1 - tanh u)
            if (dist == 0.0) {
                break;
            }
            const double w = hw * half_pi * std::cosh(t) * 4.0 * ex / ((1.0 + ex) * (1.0 + ex));
            const double x_lo = lo + dist;
            const double x_hi = hi - dist;
            double term = 0.0;
            if constexpr (with_distances) {
                term = call(x_lo, dist, width - dist) + call(x_hi, width - dist, dist);
            } else {
                // a node that rounds onto its endpoint is dropped; the other
                // side may still resolve much smaller distances
                const bool lo_ok = x_lo != lo;
                const bool hi_ok = x_hi != hi;
                if (!lo_ok && !hi_ok) {
                    break;
                }
                term = (lo_ok ? call(x_lo, x_lo - lo, hi - x_lo) : 0.0)
                       + (hi_ok ? call(x_hi, x_hi - lo, hi - x_hi) : 0.0);
            }
            term *= w;
            sum += term;
            if (t > 1.0 && std::abs(term) <= 1e-20 * std::max(std::abs(sum), scale_hint)) {
                break;
            }
        }
        return sum;
    };

    double h = 1.0;
    double sum = hw * half_pi * call(center, hw, hw) + sweep(1.0, 1.0, 0.0);
    double estimate = h * sum;
    double previous = estimate;
    double err = std::numeric_limits<double>::infinity();
    bool converged = false;
    for (int level = 1; level <= options.max_level; ++level) {
        h *= 0.5;
        sum += sweep(h, 2.0 * h, std::abs(sum));
        previous = estimate;
        estimate = h * sum;
        err = std::abs(estimate - previous);
        if (level >= options.min_level && err <= std::max(tol, options.rel_tol * std::abs(estimate))) {
            converged = true;
            break;
        }
    }
    return {estimate, err, evals, converged};
}

template <class F>
double integrate_endpoint_singular_or_throw(F&& f, double lo, double hi, double tol,
                                            const TanhSinhOptions& options = {})
{
    const auto r = integrate_endpoint_singular(f, lo, hi, tol, options);
    if (!r.converged) {
        throw tolerance_not_met("integrate_endpoint_singular: tolerance " + stickdist::detail::fmt_num(tol)
                                + " not met on [" + stickdist::detail::fmt_num(lo) + ", "
                                + stickdist::detail::fmt_num(hi) + "], estimate "
                                + stickdist::detail::fmt_num(r.abs_error_estimate));
    }
    return r.value;
}

} // namespace stickdist::quadrature
