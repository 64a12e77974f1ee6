#pragma once

// Distribution function of the unit Fejer profile F(y) = sin^2(y/2) / y^2:
//   G(mu) = m{ y in R : F(y) > mu },  0 < mu < 1/4.
// The main lobe (|y| < 2 pi) is decreasing; every later arch [2 pi k, 2 pi (k+1)]
// is unimodal with its peak at y = 2t, tan t = t. Arch peaks decrease in k, so
// the scan stops at the first arch whose peak does not exceed mu.

#include <cmath>
#include <numbers>
#include <span>
#include <vector>

#include "rilab/error.hpp"
#include "rilab/numerics/quadrature.hpp"
#include "rilab/numerics/roots.hpp"
#include "rilab/numerics/special.hpp"

namespace rilab {

inline double fejer_unit_profile(double y) noexcept {
    const double s = special::sinc(0.5 * y);
    return 0.25 * s * s;
}

/// Root of tan t = t in (k pi, k pi + pi/2), k >= 1, by Newton on sin t - t cos t.
inline double tan_fixed_point(int k) noexcept {
    const double q = (k + 0.5) * std::numbers::pi;
    double t = q - 1.0 / q;
    for (int it = 0; it < 8; ++it) {
        const double h = std::sin(t) - t * std::cos(t);
        const double dh = t * std::sin(t);
        const double step = h / dh;
        t -= step;
        if (std::abs(step) < 1e-16 * t) break;
    }
    return t;
}

namespace detail {

struct ArchPeak {
    double y;     // location 2t, tan t = t
    double level; // F(y)
};

// peaks of the first arches, computed once
inline const std::vector<ArchPeak>& arch_peaks() {
    static const std::vector<ArchPeak> table = [] {
        std::vector<ArchPeak> t(4097);
        for (int k = 1; k < static_cast<int>(t.size()); ++k) {
            const double y = 2.0 * tan_fixed_point(k);
            t[k] = {y, fejer_unit_profile(y)};
        }
        return t;
    }();
    return table;
}

inline ArchPeak arch_peak(int k) {
    const auto& table = arch_peaks();
    if (k < static_cast<int>(table.size())) return table[k];
    const double y = 2.0 * tan_fixed_point(k);
    return {y, fejer_unit_profile(y)};
}

// Roots of |sin(y/2)| = sqrt(mu) y in arch k, from the fixed points
//   y = 2 pi k + 2 asin(sqrt(mu) y)  and  y = 2 pi (k+1) - 2 asin(sqrt(mu) y),
// which contract by 2 sqrt(mu) / sqrt(1 - mu y^2) and so converge fast away from the peak.
inline bool arch_roots_fixed_point(int k, double mu, double& left, double& right) {
    const double pi = std::numbers::pi;
    const double r = std::sqrt(mu);
    left = 2.0 * pi * k;
    right = 2.0 * pi * (k + 1);
    for (int side = 0; side < 2; ++side) {
        double y = side == 0 ? left : right;
        for (int it = 0;; ++it) {
            const double arg = r * y;
            if (arg >= 1.0 || it >= 40) return false;
            const double next = side == 0 ? 2.0 * pi * k + 2.0 * std::asin(arg) : 2.0 * pi * (k + 1) - 2.0 * std::asin(arg);
            const bool done = std::abs(next - y) <= 1e-15 * next;
            y = next;
            if (done) break;
        }
        (side == 0 ? left : right) = y;
    }
    return true;
}

inline double sinc_distribution_scan(double mu) {
    const double pi = std::numbers::pi;
    auto excess = [mu](double y) { return fejer_unit_profile(y) - mu; };
    double total = roots::illinois(excess, 0.0, 2.0 * pi, 0.0, 1e-15);
    for (int k = 1;; ++k) {
        const auto [peak, top] = arch_peak(k);
        if (top <= mu) break;
        double left = 0.0;
        double right = 0.0;
        if (!arch_roots_fixed_point(k, mu, left, right)) {
            left = roots::illinois(excess, 2.0 * pi * k, peak, 0.0, 1e-15);
            right = roots::illinois(excess, peak, 2.0 * pi * (k + 1), 0.0, 1e-15);
        }
        total += right - left;
    }
    return 2.0 * total;
}

} // namespace detail

/// Below this level G is taken from its calibrated asymptotic form.
inline constexpr double sinc_distribution_switch = 1e-8;

/// G(mu) = (4/pi) mu^(-1/2) + c0 + o(1) as mu -> 0; c0 is measured at the switch level.
inline double sinc_distribution_offset() {
    static const double offset = [] {
        const double mu = sinc_distribution_switch;
        return detail::sinc_distribution_scan(mu) - 4.0 / std::numbers::pi / std::sqrt(mu);
    }();
    return offset;
}

/// G(mu) = m{y : sin^2(y/2)/y^2 > mu}; zero for mu >= 1/4. Levels below `asymptotic_below`
/// (never above 1e-6, where the asymptotic form is still good to ~2e-5 relative) use the asymptotic form.
inline double sinc_distribution(double mu, double asymptotic_below = sinc_distribution_switch) {
    require(mu > 0.0 && std::isfinite(mu), ErrorKind::InvalidArgument, "sinc distribution needs mu > 0");
    if (mu >= 0.25) return 0.0;
    if (mu < std::min(std::max(asymptotic_below, sinc_distribution_switch), 1e-6)) return 4.0 / std::numbers::pi / std::sqrt(mu) + sinc_distribution_offset();
    return detail::sinc_distribution_scan(mu);
}

/// Level of the k-th arch peak of the unit profile (k >= 1).
inline double sinc_arch_peak(int k) { return detail::arch_peak(k).level; }

/// int_0^{1/4} h(G(mu)) mu^(m-1) dmu for a continuous h.
/// G is smooth between consecutive arch-peak levels and has a square-root kink at
/// the upper end of each such panel, removed by mu = hi - (hi - lo) s^2. Below
/// 1e-6 the asymptotic form of G is used with mu = 1e-6 e^(-t).
/// Throws DivergentIntegral when the integrand does not die out as mu -> 0.
template <class H>
double sinc_level_integral(const H& h, int m, double rel_tol = 1e-9) {
    require(m >= 1, ErrorKind::InvalidArgument, "level integral needs m >= 1");
    constexpr double floor_level = 1e-6;
    quad::Options opt;
    opt.rel_tol = rel_tol;
    opt.abs_tol = 1e-300;
    opt.max_subdivisions = 2000;
    double total = 0.0;
    double err = 0.0;
    double hi = 0.25;
    for (int k = 1; hi > floor_level; ++k) {
        const double lo = std::max(sinc_arch_peak(k), floor_level);
        const double width = hi - lo;
        auto r = quad::integrate_adaptive(
            [&](double s) {
                const double mu = hi - width * s * s;
                if (mu <= 0.0 || s == 0.0) return 0.0;
                return h(sinc_distribution(mu)) * std::pow(mu, m - 1) * 2.0 * width * s;
            },
            0.0, 1.0, opt);
        total += r.value;
        err += r.abs_error;
        hi = lo;
    }
    auto below = [&](double t) {
        const double mu = floor_level * std::exp(-t);
        return h(4.0 / std::numbers::pi / std::sqrt(mu) + sinc_distribution_offset()) * std::pow(mu, m);
    };
    std::vector<double> breaks{0.0};
    for (double b = 1.0; b < 600.0; b *= 2.0) breaks.push_back(b);
    breaks.push_back(600.0);
    const auto r = quad::integrate_panels(below, std::span<const double>(breaks), opt);
    const double last = below(600.0);
    require(std::isfinite(r.value) && std::isfinite(last) && last * 100.0 <= rel_tol * (total + r.value),
            ErrorKind::DivergentIntegral, "level integral does not converge as the level tends to 0");
    total += r.value;
    err += r.abs_error;
    if (!(err <= 10.0 * rel_tol * std::abs(total)))
        throw Error(ErrorKind::QuadratureFailure, "level integral error " + std::to_string(err));
    return total;
}

} // namespace rilab
