#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <numeric>
#include <vector>

namespace rilab::opt {

struct NelderMeadOptions {
    double reflection = 1.0;
    double expansion = 2.0;
    double contraction = 0.5;
    double shrink = 0.5;
    int max_iterations = 200;
    double f_tol = 1e-10;
    double x_tol = 1e-8;
};

struct NelderMeadStep {
    int iteration;
    std::vector<double> best_x;
    double best_f;
};

struct NelderMeadResult {
    std::vector<double> x;
    double f = 0.0;
    int iterations = 0;
    int evaluations = 0;
    std::vector<NelderMeadStep> trace;
};

/// Minimizes f starting from the simplex {x0, x0 + step_i e_i}.
/// Non-finite objective values are treated as +inf (rejected points).
inline NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                                    const std::vector<double>& x0, const std::vector<double>& step,
                                    const NelderMeadOptions& opt = {}) {
    const std::size_t dim = x0.size();
    NelderMeadResult out;
    auto eval = [&](const std::vector<double>& x) {
        ++out.evaluations;
        const double v = f(x);
        return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
    };

    std::vector<std::vector<double>> simplex(dim + 1, x0);
    for (std::size_t i = 0; i < dim; ++i) simplex[i + 1][i] += step[i];
    std::vector<double> values(dim + 1);
    for (std::size_t i = 0; i <= dim; ++i) values[i] = eval(simplex[i]);

    std::vector<std::size_t> order(dim + 1);
    auto combine = [&](const std::vector<double>& base, const std::vector<double>& toward, double t) {
        std::vector<double> p(dim);
        for (std::size_t i = 0; i < dim; ++i) p[i] = base[i] + t * (toward[i] - base[i]);
        return p;
    };

    int it = 0;
    for (; it < opt.max_iterations; ++it) {
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
        {
            std::vector<std::vector<double>> s2;
            std::vector<double> v2;
            for (auto k : order) {
                s2.push_back(simplex[k]);
                v2.push_back(values[k]);
            }
            simplex.swap(s2);
            values.swap(v2);
        }
        out.trace.push_back({it, simplex[0], values[0]});

        double spread_x = 0.0;
        for (std::size_t k = 1; k <= dim; ++k)
            for (std::size_t i = 0; i < dim; ++i) spread_x = std::max(spread_x, std::abs(simplex[k][i] - simplex[0][i]));
        if (std::isfinite(values[dim]) && std::abs(values[dim] - values[0]) <= opt.f_tol * (1.0 + std::abs(values[0])) &&
            spread_x <= opt.x_tol)
            break;

        std::vector<double> centroid(dim, 0.0);
        for (std::size_t k = 0; k < dim; ++k)
            for (std::size_t i = 0; i < dim; ++i) centroid[i] += simplex[k][i] / static_cast<double>(dim);

        const auto reflected = combine(centroid, simplex[dim], -opt.reflection);
        const double f_r = eval(reflected);
        if (f_r < values[0]) {
            const auto expanded = combine(centroid, simplex[dim], -opt.reflection * opt.expansion);
            const double f_e = eval(expanded);
            if (f_e < f_r) {
                simplex[dim] = expanded;
                values[dim] = f_e;
            } else {
                simplex[dim] = reflected;
                values[dim] = f_r;
            }
            continue;
        }
        if (f_r < values[dim - 1]) {
            simplex[dim] = reflected;
            values[dim] = f_r;
            continue;
        }
        const bool outside = f_r < values[dim];
        const auto contracted =
            outside ? combine(centroid, reflected, opt.contraction) : combine(centroid, simplex[dim], opt.contraction);
        const double f_c = eval(contracted);
        if (f_c < std::min(f_r, values[dim])) {
            simplex[dim] = contracted;
            values[dim] = f_c;
            continue;
        }
        for (std::size_t k = 1; k <= dim; ++k) {
            simplex[k] = combine(simplex[0], simplex[k], opt.shrink);
            values[k] = eval(simplex[k]);
        }
    }
    const auto best = std::min_element(values.begin(), values.end()) - values.begin();
    out.x = simplex[best];
    out.f = values[best];
    out.iterations = it;
    return out;
}

} // namespace rilab::opt
