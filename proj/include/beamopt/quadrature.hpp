#pragma once
#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <utility>
#include <vector>

#include "beamopt/errors.hpp"

// Globally adaptive Gauss-Kronrod 7-15 quadrature. Intervals are split
// worst-error-first until the summed error estimate meets the tolerance.
namespace beamopt::quad {

struct Options {
    double rel_tol = 1e-6;
    double abs_tol = 0.0;
    int max_intervals = 4000;
};

struct Result {
    double value;
    double error;     // absolute error estimate
    int intervals;    // intervals in the final partition
};

namespace detail {

// Kronrod 15-point nodes on [0,1] (symmetric) with Kronrod weights; the
// embedded 7-point Gauss rule uses the odd-indexed nodes.
inline constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
inline constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
inline constexpr double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct Segment {
    double a, b;
    double value;
    double error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

template <class F>
Segment eval_gk15(F& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    const double fc = f(center);
    double gauss = kWg[3] * fc;
    double kronrod = kWgk[7] * fc;
    double resabs = kWgk[7] * std::fabs(fc);

    double fv[7][2];
    for (int i = 0; i < 7; ++i) {
        const double dx = half * kXgk[i];
        fv[i][0] = f(center - dx);
        fv[i][1] = f(center + dx);
        const double sum = fv[i][0] + fv[i][1];
        kronrod += kWgk[i] * sum;
        resabs += kWgk[i] * (std::fabs(fv[i][0]) + std::fabs(fv[i][1]));
        if (i % 2 == 1) gauss += kWg[i / 2] * sum;
    }

    // resasc: integral of |f - mean|, used to scale the error estimate the
    // way QUADPACK does so nearly-exact rules are not over-penalized.
    const double mean = kronrod * 0.5;
    double resasc = kWgk[7] * std::fabs(fc - mean);
    for (int i = 0; i < 7; ++i) {
        resasc += kWgk[i] * (std::fabs(fv[i][0] - mean) + std::fabs(fv[i][1] - mean));
    }

    const double value = kronrod * half;
    resabs *= std::fabs(half);
    resasc *= std::fabs(half);
    double err = std::fabs((kronrod - gauss) * half);
    if (resasc != 0.0 && err != 0.0) {
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    }
    const double eps = 50.0 * std::numeric_limits<double>::epsilon() * resabs;
    if (eps > 0.0) err = std::max(err, eps);
    return Segment{a, b, value, err};
}

}  // namespace detail

// Integrate f over [a, b]. `seeds` optionally pre-splits the interval at the
// given interior points (useful when the integrand lives on a log scale).
// Throws numerical_error if the interval budget runs out first.
template <class F>
Result integrate(F&& f, double a, double b, const Options& opt = {},
                 const std::vector<double>& seeds = {}) {
    if (!(b > a)) return Result{0.0, 0.0, 0};

    std::priority_queue<detail::Segment> heap;
    double total = 0.0, total_err = 0.0;
    int count = 0;

    auto push = [&](double lo, double hi) {
        detail::Segment s = detail::eval_gk15(f, lo, hi);
        total += s.value;
        total_err += s.error;
        heap.push(s);
        ++count;
    };

    double prev = a;
    for (double s : seeds) {
        if (s > prev && s < b) {
            push(prev, s);
            prev = s;
        }
    }
    push(prev, b);

    auto converged = [&] {
        return total_err <= std::max(opt.rel_tol * std::fabs(total), opt.abs_tol);
    };

    while (!converged()) {
        if (count >= opt.max_intervals) {
            throw numerical_error("quadrature interval budget exhausted", total, total_err);
        }
        detail::Segment worst = heap.top();
        heap.pop();
        total -= worst.value;
        total_err -= worst.error;
        --count;
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // worst interval is at floating-point resolution; no split can
            // reduce the error further, so return the best effort
            total += worst.value;
            total_err += worst.error;
            heap.push(worst);
            ++count;
            break;
        }
        push(worst.a, mid);
        push(mid, worst.b);
    }
    return Result{total, total_err, count};
}

// Integrate f over (a, inf), a > 0, via the substitution w = a/u which maps
// the tail onto u in (0, 1].
template <class F>
Result integrate_to_inf(F&& f, double a, const Options& opt = {}) {
    auto g = [&f, a](double u) {
        if (u <= 0.0) return 0.0;  // integrand must vanish at infinity
        const double w = a / u;
        return f(w) * w / u;
    };
    return integrate(g, 0.0, 1.0, opt);
}

}  // namespace beamopt::quad
