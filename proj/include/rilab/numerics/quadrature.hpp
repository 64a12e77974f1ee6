#pragma once

// Adaptive Gauss-Kronrod quadrature (21-point rule, QUADPACK error heuristic)
// with a global priority queue over panels, plus an Euler-Maclaurin summation
// for tails of the form  sum_k  int_0^T w(u) (x0 + kT + u)^(-e) du.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <span>
#include <string>
#include <vector>

#include "rilab/error.hpp"

namespace rilab::quad {

struct Options {
    double abs_tol = 0.0;
    double rel_tol = 1e-10;
    int max_subdivisions = 20000;
};

struct Result {
    double value = 0.0;
    double abs_error = 0.0;
    int evaluations = 0;
    int panels = 0;
    bool converged = false;
};

namespace detail {

inline constexpr std::array<double, 11> kronrod_nodes = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};

inline constexpr std::array<double, 11> kronrod_weights = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208643474695, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};

// weights of the embedded 10-point Gauss rule at kronrod_nodes[1], [3], ..., [9]
inline constexpr std::array<double, 5> gauss_weights = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Panel {
    double a;
    double b;
    double value;
    double error;
    bool operator<(const Panel& other) const { return error < other.error; }
};

template <class F>
Panel gk21(const F& f, double a, double b) {
    constexpr double eps = std::numeric_limits<double>::epsilon();
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double res_k = fc * kronrod_weights[10];
    double res_g = 0.0;
    double res_abs = std::abs(res_k);
    std::array<double, 10> lo{};
    std::array<double, 10> hi{};
    for (int j = 0; j < 10; ++j) {
        const double dx = half * kronrod_nodes[j];
        lo[j] = f(center - dx);
        hi[j] = f(center + dx);
        const double pair = lo[j] + hi[j];
        res_k += kronrod_weights[j] * pair;
        res_abs += kronrod_weights[j] * (std::abs(lo[j]) + std::abs(hi[j]));
        if (j % 2 == 1) res_g += gauss_weights[j / 2] * pair;
    }
    const double mean = 0.5 * res_k;
    double res_asc = kronrod_weights[10] * std::abs(fc - mean);
    for (int j = 0; j < 10; ++j)
        res_asc += kronrod_weights[j] * (std::abs(lo[j] - mean) + std::abs(hi[j] - mean));

    const double scale = std::abs(half);
    res_k *= half;
    res_g *= half;
    res_abs *= scale;
    res_asc *= scale;
    double err = std::abs(res_k - res_g);
    if (res_asc != 0.0 && err != 0.0) err = res_asc * std::min(1.0, std::pow(200.0 * err / res_asc, 1.5));
    if (res_abs > std::numeric_limits<double>::min() / (50.0 * eps)) err = std::max(50.0 * eps * res_abs, err);
    return {a, b, res_k, err};
}

} // namespace detail

struct GaussRule {
    std::vector<double> nodes;   // on [-1, 1]
    std::vector<double> weights;
};

/// n-point Gauss-Legendre rule by Newton iteration on P_n.
inline GaussRule gauss_legendre(int n) {
    require(n >= 1, ErrorKind::InvalidArgument, "Gauss-Legendre rule needs n >= 1");
    GaussRule rule{std::vector<double>(n), std::vector<double>(n)};
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 1.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    return rule;
}

/// Integrates f over the union of consecutive panels [b0,b1], [b1,b2], ...
/// All panels share one refinement queue, so effort goes where the error is.
template <class F>
Result integrate_panels(const F& f, std::span<const double> breaks, const Options& opt = {}) {
    Result out;
    if (breaks.size() < 2) return out;
    std::priority_queue<detail::Panel> queue;
    double total = 0.0;
    double total_err = 0.0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        if (breaks[i + 1] == breaks[i]) continue;
        auto p = detail::gk21(f, breaks[i], breaks[i + 1]);
        total += p.value;
        total_err += p.error;
        queue.push(p);
        out.evaluations += 21;
    }
    int splits = 0;
    constexpr double eps = std::numeric_limits<double>::epsilon();
    while (!queue.empty()) {
        const double target = std::max(opt.abs_tol, opt.rel_tol * std::abs(total));
        if (total_err <= target) {
            out.converged = true;
            break;
        }
        if (splits >= opt.max_subdivisions) break;
        auto worst = queue.top();
        const double mid = 0.5 * (worst.a + worst.b);
        // a panel at the resolution limit cannot improve further
        if (std::abs(worst.b - worst.a) <= 8.0 * eps * std::max(std::abs(worst.a), std::abs(worst.b))) {
            out.converged = total_err <= 10.0 * target;
            break;
        }
        queue.pop();
        auto left = detail::gk21(f, worst.a, mid);
        auto right = detail::gk21(f, mid, worst.b);
        out.evaluations += 42;
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        queue.push(left);
        queue.push(right);
        ++splits;
    }
    // re-sum to shed the drift of the running updates
    total = 0.0;
    total_err = 0.0;
    out.panels = static_cast<int>(queue.size());
    while (!queue.empty()) {
        total += queue.top().value;
        total_err += queue.top().error;
        queue.pop();
    }
    out.value = total;
    out.abs_error = total_err;
    if (!out.converged) out.converged = total_err <= std::max(opt.abs_tol, opt.rel_tol * std::abs(total));
    return out;
}

template <class F>
Result integrate_adaptive(const F& f, double a, double b, const Options& opt = {}) {
    const std::array<double, 2> breaks{a, b};
    return integrate_panels(f, std::span<const double>(breaks), opt);
}

/// Throws QuadratureFailure when the budget is exhausted before the tolerance is met.
template <class F>
double integrate(const F& f, double a, double b, const Options& opt = {}, const std::string& what = "integral") {
    auto r = integrate_adaptive(f, a, b, opt);
    if (!r.converged)
        throw Error(ErrorKind::QuadratureFailure,
                    what + " did not converge on [" + std::to_string(a) + ", " + std::to_string(b) +
                        "] (estimated error " + std::to_string(r.abs_error) + ")");
    return r.value;
}

template <class F>
double integrate(const F& f, std::span<const double> breaks, const Options& opt = {},
                 const std::string& what = "integral") {
    auto r = integrate_panels(f, breaks, opt);
    if (!r.converged)
        throw Error(ErrorKind::QuadratureFailure,
                    what + " did not converge (estimated error " + std::to_string(r.abs_error) + ", value " +
                        std::to_string(r.value) + ")");
    return r.value;
}

/// Sum over k >= 0 of  int_0^T w(u) (x0 + k T + u)^(-e) du  for e > 1,
/// by Euler-Maclaurin in the cell index k. Accurate when x0 >> T * (e + 12).
template <class W>
double periodic_power_tail(const W& weight, double period, double x0, double exponent, const Options& opt = {}) {
    require(exponent > 1.0, ErrorKind::DivergentIntegral,
            "periodic tail with decay exponent " + std::to_string(exponent) + " <= 1 diverges");
    require(x0 > 0.0 && period > 0.0, ErrorKind::InvalidArgument, "periodic tail needs x0 > 0 and period > 0");

    // Bernoulli numbers B_2 .. B_12
    constexpr std::array<double, 6> bernoulli = {1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0, 5.0 / 66.0,
                                                 -691.0 / 2730.0};
    const std::array<double, 2> cell{0.0, period};
    auto cell_integral = [&](auto&& g) { return integrate(g, std::span<const double>(cell), opt, "tail cell"); };

    const double head = cell_integral([&](double u) {
        return weight(u) * std::pow(x0 + u, 1.0 - exponent) / (period * (exponent - 1.0));
    });
    const double first = cell_integral([&](double u) { return weight(u) * std::pow(x0 + u, -exponent); });
    double sum = head + 0.5 * first;

    // a^(r)(0) = (-e)(-e-1)...(-e-r+1) T^r int w(u) (x0+u)^(-e-r) du
    double factorial = 1.0;
    for (int j = 1; j <= 6; ++j) {
        const int r = 2 * j - 1;
        double falling = 1.0;
        for (int i = 0; i < r; ++i) falling *= -(exponent + i);
        factorial *= (2.0 * j - 1.0) * (2.0 * j);
        const double deriv = falling * std::pow(period, r) *
                             cell_integral([&](double u) { return weight(u) * std::pow(x0 + u, -exponent - r); });
        const double term = bernoulli[j - 1] / factorial * deriv;
        sum -= term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return sum;
}

} // namespace rilab::quad
