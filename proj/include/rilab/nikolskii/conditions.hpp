#pragma once

// Side conditions on the generating functions:
//   Orlicz:  int_1^inf Phi(v / y^(2m)) dy <= Phi(C_m v)   for v >= 1,
//   Lorentz: int_0^{1/4} phi(eps G(lambda)) d lambda <= phi(C eps),
// with G the distribution function of sin^2(y/2)/y^2. Both report the smallest
// admissible constant on the grid and its stability under grid doubling.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "rilab/distribution.hpp"
#include "rilab/nikolskii/rates.hpp"
#include "rilab/ri_spaces.hpp"

namespace rilab {

struct ConditionPoint {
    double argument = 0.0; // v or eps
    double integral = 0.0;
    double constant = 0.0; // smallest C with the bound at this argument
};

struct ConditionResult {
    bool holds = false;
    double measured_c = 0.0; // max over the grid
    double refined_c = 0.0;  // max over the doubled grid
    double converse_c = 0.0; // min over the grid (the reverse bound holds with it)
    std::vector<ConditionPoint> points;
    std::string rule = "constant finite and stable within 1e-3 under grid doubling";
};

namespace detail {

inline void require_log_grid(const std::vector<double>& grid, double lo, double hi, std::size_t min_points,
                             const std::string& what) {
    require(grid.size() >= min_points, ErrorKind::InvalidArgument,
            what + " needs at least " + std::to_string(min_points) + " points");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        require(grid[i] >= lo * (1.0 - 1e-12) && grid[i] <= hi * (1.0 + 1e-12), ErrorKind::InvalidArgument,
                what + " point " + SpaceSpec::fmt_number(grid[i]) + " outside [" + SpaceSpec::fmt_number(lo) + ", " +
                    SpaceSpec::fmt_number(hi) + "]");
        if (i > 0) require(grid[i] > grid[i - 1], ErrorKind::InvalidArgument, what + " must be increasing");
    }
}

template <class Point>
ConditionResult condition_campaign(const std::vector<double>& grid, const Point& point) {
    ConditionResult out;
    out.points = parallel_map(grid, point);
    out.measured_c = 0.0;
    out.converse_c = infinity;
    for (const auto& p : out.points) {
        out.measured_c = std::max(out.measured_c, p.constant);
        out.converse_c = std::min(out.converse_c, p.constant);
    }
    const auto fine = refine_geometric(grid);
    std::vector<double> extra;
    for (double x : fine)
        if (std::find(grid.begin(), grid.end(), x) == grid.end()) extra.push_back(x);
    out.refined_c = out.measured_c;
    for (const auto& p : parallel_map(extra, point)) out.refined_c = std::max(out.refined_c, p.constant);
    out.holds = std::isfinite(out.measured_c) && out.measured_c > 0.0 &&
                std::abs(out.refined_c - out.measured_c) <= 1e-3 * out.measured_c;
    return out;
}

} // namespace detail

/// int_1^inf Phi(v y^(-2m)) dy = (1/2m) int_0^1 Phi(v u) u^(-1-1/2m) du. Below u0 = 1e-8 / v
/// the small-argument power law of Phi is integrated in closed form.
inline double orlicz_condition11_integral(const OrliczFunction& phi, int m, double v, double tol = 1e-10) {
    require(m >= 1 && v > 0.0, ErrorKind::InvalidArgument, "condition integral needs m >= 1 and v > 0");
    const double k = phi.small.exponent;
    const double a = 1.0 / (2.0 * m);
    require(k > a, ErrorKind::DivergentIntegral,
            phi.name + " vanishes like u^" + SpaceSpec::fmt_number(k) + ", too slowly against y^(-2m)");
    const double u0 = std::min(1.0, 1e-8 / v);
    const double head = phi.small.coefficient * std::pow(v, k) * std::pow(u0, k - a) / (k - a);
    // u = e^t on [log u0, 0]
    const double t0 = std::log(u0);
    std::vector<double> breaks;
    for (double t = t0; t < 0.0; t += 2.0) breaks.push_back(t);
    breaks.push_back(0.0);
    quad::Options opt;
    opt.rel_tol = tol;
    opt.abs_tol = 1e-300;
    const auto body = quad::integrate_panels([&](double t) { return phi(v * std::exp(t)) * std::exp(-a * t); },
                                             std::span<const double>(breaks), opt);
    const double total = a * (head + body.value);
    require(std::isfinite(total), ErrorKind::OutOfRange,
            phi.name + " overflows in the condition integral at v = " + SpaceSpec::fmt_number(v));
    return total;
}

inline ConditionResult orlicz_condition11_check(const OrliczFunction& phi, int m, const std::vector<double>& v_grid,
                                                double tol = 1e-10) {
    require(m >= 1, ErrorKind::InvalidArgument, "m must be a positive integer");
    detail::require_log_grid(v_grid, 1.0, 1e6, 20, "v_grid");
    return detail::condition_campaign(v_grid, [&](double v) {
        ConditionPoint p{v, orlicz_condition11_integral(phi, m, v, tol), 0.0};
        p.constant = phi.inverse(p.integral) / v;
        return p;
    });
}

/// int_0^{1/4} phi(eps G(lambda)) d lambda.
inline double q_condition_integral(const LorentzPhiSpec& phi, double eps, double tol = 1e-9) {
    require(eps > 0.0, ErrorKind::InvalidArgument, "eps must be positive");
    return sinc_level_integral([&](double g) { return phi(eps * g); }, 1, tol);
}

inline ConditionResult q_condition_check(const LorentzPhiSpec& phi, const std::vector<double>& eps_grid,
                                         double tol = 1e-9) {
    detail::require_log_grid(eps_grid, 1e-6, 1e2, 2, "eps_grid");
    return detail::condition_campaign(eps_grid, [&](double eps) {
        ConditionPoint p{eps, q_condition_integral(phi, eps, tol), 0.0};
        p.constant = roots::inverse_increasing([&](double d) { return phi(d); }, p.integral) / eps;
        return p;
    });
}

/// n_points log-spaced values from lo to hi.
inline std::vector<double> log_grid(double lo, double hi, int n_points) {
    require(lo > 0.0 && hi > lo && n_points >= 2, ErrorKind::InvalidArgument, "invalid log grid");
    std::vector<double> g;
    for (int i = 0; i < n_points; ++i) g.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (n_points - 1)));
    g.back() = hi;
    return g;
}

} // namespace rilab
