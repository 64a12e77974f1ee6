#pragma once

// Maximizing the witness quotient over generalized kernels D_n^{alpha,beta}:
// a log-spaced grid over (alpha, beta), then Nelder-Mead from the best cells.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "rilab/moments.hpp"
#include "rilab/nikolskii/functional.hpp"
#include "rilab/numerics/nelder_mead.hpp"

namespace rilab {

struct OptimizeOptions {
    double alpha_min = 1.0 / 64.0;
    double alpha_max = 8.0;
    double beta_min = 1.0 / 64.0;
    double beta_max = 8.0;
    int grid_points = 17; // per axis, log-spaced over [grid_lo, grid_hi]
    double grid_lo = 1.0 / 32.0;
    double grid_hi = 8.0;
    int restarts = 3;
    int iterations = 200;
    double search_tol = 1e-5; // integrals during the search
    double final_tol = 1e-7;  // certified re-evaluation of the winner
    int profile_points = 12;  // per branch, for the shared moment profile of two G spaces

    void validate() const {
        require(alpha_min > 0.0 && beta_min > 0.0 && alpha_max > alpha_min && beta_max > beta_min,
                ErrorKind::InvalidArgument, "invalid (alpha, beta) bounds");
        require(grid_lo >= std::max(alpha_min, beta_min) && grid_hi <= std::min(alpha_max, beta_max) &&
                    grid_hi > grid_lo,
                ErrorKind::InvalidArgument, "the search grid must lie inside the bounds");
        require(grid_points >= 2 && restarts >= 1 && iterations >= 1, ErrorKind::InvalidArgument,
                "grid needs two points and at least one restart");
        require(search_tol > 0.0 && final_tol > 0.0 && profile_points >= 4, ErrorKind::InvalidArgument,
                "invalid optimizer tolerances");
    }
};

struct OptimizerTraceEntry {
    std::string phase; // "grid" or "nelder-mead <k>"
    double alpha = 0.0;
    double beta = 0.0;
    std::optional<double> value;
    std::string error; // set for skipped points
};

struct OptimizeResult {
    double alpha = 1.0;
    double beta = 1.0;
    double search_value = 0.0; // objective at the winner during the search
    NFEvaluation best;         // certified re-evaluation
    NFEvaluation baseline;     // Fejer witness, same (X, Y, n)
    std::vector<OptimizerTraceEntry> trace;
    int skipped = 0;
};

namespace detail {

/// Search objective. For two Grand Lebesgue spaces one moment profile serves both norms.
inline double quick_quotient(const SpaceSpec& X, const SpaceSpec& Y, const Witness& w, double n,
                             const NFParams& params, double tol, int per_branch) {
    const auto* gx = std::get_if<GrandLebesgueSpec>(&X.kind);
    const auto* gy = std::get_if<GrandLebesgueSpec>(&Y.kind);
    if (!gx || !gy) return nf_witness_value(X, Y, w, n, params, tol).value;
    std::vector<double> ps = gx->sample_grid(per_branch);
    const auto more = gy->sample_grid(per_branch);
    ps.insert(ps.end(), more.begin(), more.end());
    std::sort(ps.begin(), ps.end());
    ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
    const auto profile = moment_profile(w, ps, tol, false);
    const double sigma = params.sigma_at(n);
    const double nx = grand_lebesgue_norm(profile, *gx).value;
    const double ny = grand_lebesgue_norm(profile, *gy).value;
    return (nx / fundamental_function(X, params.K1 / sigma)) / (ny / fundamental_function(Y, params.K2 / sigma));
}

} // namespace detail

inline OptimizeResult optimize_kernel_params(const SpaceSpec& X, const SpaceSpec& Y, double n, const NFParams& params,
                                             const OptimizeOptions& opt = {}) {
    opt.validate();
    params.validate();
    OptimizeResult out;

    auto objective = [&](double alpha, double beta, const std::string& phase) -> std::optional<double> {
        OptimizerTraceEntry entry{phase, alpha, beta, std::nullopt, {}};
        std::optional<double> value;
        try {
            const auto w = Witness::kernel(KernelSpec::generalized(n, alpha, beta));
            value = detail::quick_quotient(X, Y, w, n, params, opt.search_tol, opt.profile_points);
            entry.value = value;
        } catch (const Error& e) {
            entry.error = e.what();
            ++out.skipped;
        }
        out.trace.push_back(std::move(entry));
        return value;
    };

    // grid
    const int g = opt.grid_points;
    std::vector<double> axis(g);
    for (int i = 0; i < g; ++i)
        axis[i] = std::exp2(std::log2(opt.grid_lo) + (std::log2(opt.grid_hi) - std::log2(opt.grid_lo)) * i / (g - 1));
    std::vector<std::pair<double, double>> cells;
    for (double a : axis)
        for (double b : axis) cells.emplace_back(a, b);
    // the grid is evaluated in parallel, the trace is written in grid order
    const auto grid_entries = parallel_map(cells, [&](const std::pair<double, double>& c) {
        OptimizerTraceEntry entry{"grid", c.first, c.second, std::nullopt, {}};
        try {
            const auto w = Witness::kernel(KernelSpec::generalized(n, c.first, c.second));
            entry.value = detail::quick_quotient(X, Y, w, n, params, opt.search_tol, opt.profile_points);
        } catch (const Error& e) {
            entry.error = e.what();
        }
        return entry;
    });
    std::vector<std::optional<double>> grid_values;
    for (const auto& e : grid_entries) {
        grid_values.push_back(e.value);
        if (!e.value) ++out.skipped;
        out.trace.push_back(e);
    }

    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < cells.size(); ++i)
        if (grid_values[i]) order.push_back(i);
    require(!order.empty(), ErrorKind::QuadratureFailure, "every grid point of the kernel search failed");
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return *grid_values[a] > *grid_values[b]; });

    double best_value = *grid_values[order.front()];
    double best_alpha = cells[order.front()].first;
    double best_beta = cells[order.front()].second;

    // Nelder-Mead in (log2 alpha, log2 beta), minimizing -W; outside the bounds counts as +inf
    const double la_lo = std::log2(opt.alpha_min);
    const double la_hi = std::log2(opt.alpha_max);
    const double lb_lo = std::log2(opt.beta_min);
    const double lb_hi = std::log2(opt.beta_max);
    const int starts = std::min<int>(opt.restarts, static_cast<int>(order.size()));
    for (int k = 0; k < starts; ++k) {
        const auto [a0, b0] = cells[order[k]];
        const std::string phase = "nelder-mead " + std::to_string(k + 1);
        auto f = [&](const std::vector<double>& x) {
            if (x[0] < la_lo || x[0] > la_hi || x[1] < lb_lo || x[1] > lb_hi)
                return std::numeric_limits<double>::infinity();
            const auto v = objective(std::exp2(x[0]), std::exp2(x[1]), phase);
            return v ? -*v : std::numeric_limits<double>::infinity();
        };
        opt::NelderMeadOptions nm;
        nm.max_iterations = opt.iterations;
        nm.x_tol = 1e-3;
        nm.f_tol = 0.1 * opt.search_tol;
        const auto r = opt::nelder_mead(f, {std::log2(a0), std::log2(b0)}, {0.25, 0.25}, nm);
        if (std::isfinite(r.f) && -r.f > best_value) {
            best_value = -r.f;
            best_alpha = std::exp2(r.x[0]);
            best_beta = std::exp2(r.x[1]);
        }
    }

    out.alpha = best_alpha;
    out.beta = best_beta;
    out.search_value = best_value;
    const auto spec = KernelSpec::generalized(n, best_alpha, best_beta);
    out.best = nf_witness_value(X, Y, Witness::kernel(spec), n, params, opt.final_tol);
    out.best.witness = spec;
    out.baseline = nf_witness_value(X, Y, KernelSpec::fejer(n), params, opt.final_tol);
    return out;
}

} // namespace rilab
