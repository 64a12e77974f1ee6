#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <utility>

#include "rilab/error.hpp"

namespace rilab::roots {

/// Root of f on [lo, hi] by bisection; f(lo) and f(hi) must differ in sign.
/// Stops when the bracket is narrower than x_tol (absolute) or rel_tol * |x|.
template <class F>
double bisect(const F& f, double lo, double hi, double x_tol = 0.0, double rel_tol = 1e-15, int max_iter = 400) {
    double f_lo = f(lo);
    double f_hi = f(hi);
    if (f_lo == 0.0) return lo;
    if (f_hi == 0.0) return hi;
    require(std::signbit(f_lo) != std::signbit(f_hi), ErrorKind::RootFailure,
            "bisection bracket [" + std::to_string(lo) + ", " + std::to_string(hi) + "] has no sign change");
    for (int it = 0; it < max_iter; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (hi - lo <= std::max(x_tol, rel_tol * std::abs(mid))) break;
        const double f_mid = f(mid);
        if (f_mid == 0.0) return mid;
        if (std::signbit(f_mid) == std::signbit(f_lo)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

/// Illinois-modified regula falsi: superlinear on smooth brackets, never leaves [lo, hi].
template <class F>
double illinois(const F& f, double lo, double hi, double x_tol = 0.0, double rel_tol = 1e-14, int max_iter = 200) {
    double f_lo = f(lo);
    double f_hi = f(hi);
    if (f_lo == 0.0) return lo;
    if (f_hi == 0.0) return hi;
    require(std::signbit(f_lo) != std::signbit(f_hi), ErrorKind::RootFailure,
            "regula falsi bracket [" + std::to_string(lo) + ", " + std::to_string(hi) + "] has no sign change");
    int side = 0;
    double x = lo;
    for (int it = 0; it < max_iter; ++it) {
        x = (lo * f_hi - hi * f_lo) / (f_hi - f_lo);
        if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);
        const double fx = f(x);
        if (fx == 0.0) return x;
        if (std::signbit(fx) == std::signbit(f_hi)) {
            hi = x;
            f_hi = fx;
            if (side == -1) f_lo *= 0.5;
            side = -1;
        } else {
            lo = x;
            f_lo = fx;
            if (side == 1) f_hi *= 0.5;
            side = 1;
        }
        if (hi - lo <= std::max(x_tol, rel_tol * std::abs(x))) break;
    }
    return x;
}

/// Inverse of a strictly increasing positive function on (0, inf), by
/// bisection in log-space over [1e-300, 1e300].
template <class F>
double inverse_increasing(const F& f, double target, double rel_tol = 1e-15) {
    require(target > 0.0 && std::isfinite(target), ErrorKind::InvalidArgument, "inverse target must be positive");
    auto g = [&](double t) { return std::log(f(std::exp(t))) - std::log(target); };
    double lo = std::log(1e-300);
    double hi = std::log(1e300);
    // tighten the huge bracket geometrically before bisecting
    double probe = 0.0;
    if (g(probe) < 0.0) {
        lo = probe;
        for (double step = 1.0; probe < hi; step *= 2.0) {
            probe = std::min(hi, probe + step);
            if (g(probe) >= 0.0) break;
            lo = probe;
        }
        hi = probe;
    } else {
        hi = probe;
        for (double step = 1.0; probe > lo; step *= 2.0) {
            probe = std::max(lo, probe - step);
            if (g(probe) <= 0.0) break;
            hi = probe;
        }
        lo = probe;
    }
    auto guarded = [&](double t) {
        const double v = g(t);
        return std::isnan(v) ? (t < 0 ? -1.0 : 1.0) : v;
    };
    return std::exp(bisect(guarded, lo, hi, 0.0, rel_tol * 0.1, 2000));
}

struct Extremum {
    double x;
    double value;
};

/// Golden-section search for the maximum of a unimodal function on [lo, hi].
template <class F>
Extremum golden_max(const F& f, double lo, double hi, double x_tol = 1e-10, int max_iter = 200) {
    constexpr double inv_phi = 0.6180339887498948482;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = f(x1);
    double f2 = f(x2);
    for (int it = 0; it < max_iter && (hi - lo) > x_tol; ++it) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        }
    }
    return f1 >= f2 ? Extremum{x1, f1} : Extremum{x2, f2};
}

template <class F>
Extremum golden_min(const F& f, double lo, double hi, double x_tol = 1e-10, int max_iter = 200) {
    auto r = golden_max([&](double x) { return -f(x); }, lo, hi, x_tol, max_iter);
    return {r.x, -r.value};
}

} // namespace rilab::roots
