#pragma once

// Campaigns over n: boundedness of the running max of W_n, positivity of the
// Fejer-witness quotient, and regularity ||D_n||_X ~ phi(X, C/n).
// All verdicts are stability heuristics on finite grids and say so.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "rilab/nikolskii/conditions.hpp"
#include "rilab/nikolskii/functional.hpp"

namespace rilab {

inline constexpr const char* lower_bound_disclaimer =
    "finite witness families give lower bounds for the sup over A(n) only";

namespace detail {

inline void require_n_grid(const std::vector<double>& n_grid) {
    require(!n_grid.empty(), ErrorKind::InvalidArgument, "empty n_grid");
    for (std::size_t i = 0; i < n_grid.size(); ++i) {
        require(n_grid[i] >= 1.0, ErrorKind::InvalidArgument, "n_grid entries must be >= 1");
        if (i > 0) require(n_grid[i] > n_grid[i - 1], ErrorKind::InvalidArgument, "n_grid must be increasing");
    }
}

} // namespace detail

// ---------------------------------------------------------------------------
// strong pairs

struct StrongPairRow {
    double n = 0.0;
    double value = 0.0;
    std::string best_witness;
    double running_max = 0.0;
};

struct StrongPairReport {
    std::vector<StrongPairRow> rows;
    bool applicable = false;      // supp(X) lies to the right of supp(Y)
    double last_octave_increase = 0.0; // relative growth of the running max over n in [n_max/2, n_max]
    std::string verdict;
    std::string rule = "stabilization 1%/octave";
    std::string disclaimer = lower_bound_disclaimer;
};

/// (c, d) >> (a, b): both Grand Lebesgue and c >= b.
inline bool support_dominates(const SpaceSpec& X, const SpaceSpec& Y) {
    const auto* gx = std::get_if<GrandLebesgueSpec>(&X.kind);
    const auto* gy = std::get_if<GrandLebesgueSpec>(&Y.kind);
    return gx && gy && gx->a >= gy->b;
}

inline StrongPairReport strong_pair_scan(const SpaceSpec& X, const SpaceSpec& Y, const std::vector<double>& n_grid,
                                         const NFParams& params, const WitnessFamily& family, double tol = 1e-8) {
    detail::require_n_grid(n_grid);
    StrongPairReport out;
    out.applicable = support_dominates(X, Y);
    const auto bounds = parallel_map(n_grid, [&](double n) {
        return nf_lower_bound(X, Y, n, params, family.members(n), tol).best;
    });
    double running = 0.0;
    for (std::size_t i = 0; i < n_grid.size(); ++i) {
        running = std::max(running, bounds[i].value);
        out.rows.push_back({n_grid[i], bounds[i].value, bounds[i].witness.label(), running});
    }
    const double n_max = n_grid.back();
    double at_half = out.rows.front().running_max;
    for (const auto& r : out.rows)
        if (r.n <= 0.5 * n_max * (1.0 + 1e-12)) at_half = r.running_max;
    out.last_octave_increase = (running - at_half) / at_half;
    if (!out.applicable)
        out.verdict = "not applicable";
    else
        out.verdict = out.last_octave_increase < 0.01 ? "consistent with bounded" : "not stabilized";
    return out;
}

// ---------------------------------------------------------------------------
// Fejer-witness floors

struct FloorRow {
    double n = 0.0;
    double norm_x = 0.0;
    double phi_x = 0.0;
    double norm_y = 0.0;
    double phi_y = 0.0;
    double quotient = 0.0;
};

struct FloorReport {
    std::vector<FloorRow> rows;
    double min_quotient = 0.0;
    double max_quotient = 0.0;
    double last_octave_min = 0.0; // min over n in [n_max/2, n_max]
    bool positive = false;
    bool stable = false;
    std::string rule = "positive floor: min over the last octave of n at least half the min over the rest";
    std::string disclaimer = lower_bound_disclaimer;
};

namespace detail {

template <class Norm, class Phi>
FloorReport floor_campaign(const std::vector<double>& n_grid, const NFParams& params, const Norm& norm_x,
                           const Phi& phi_x, const Norm& norm_y, const Phi& phi_y) {
    require_n_grid(n_grid);
    params.validate();
    FloorReport out;
    out.rows = parallel_map(n_grid, [&](double n) {
        try {
            const double sigma = params.sigma_at(n);
            const auto w = Witness::kernel(KernelSpec::fejer(n));
            FloorRow r{n, norm_x(w), phi_x(params.K1 / sigma), norm_y(w), phi_y(params.K2 / sigma), 0.0};
            r.quotient = (r.norm_x / r.phi_x) / (r.norm_y / r.phi_y);
            return r;
        } catch (const Error& e) {
            throw Error(e.kind(), "at n = " + SpaceSpec::fmt_number(n) + ": " + e.what());
        }
    });
    out.min_quotient = infinity;
    out.last_octave_min = infinity;
    double rest_min = infinity;
    const double n_max = n_grid.back();
    for (const auto& r : out.rows) {
        out.min_quotient = std::min(out.min_quotient, r.quotient);
        out.max_quotient = std::max(out.max_quotient, r.quotient);
        if (r.n >= 0.5 * n_max * (1.0 - 1e-12)) out.last_octave_min = std::min(out.last_octave_min, r.quotient);
        else rest_min = std::min(rest_min, r.quotient);
    }
    out.positive = out.min_quotient > 0.0 && std::isfinite(out.min_quotient);
    out.stable = out.positive && (!std::isfinite(rest_min) || out.last_octave_min >= 0.5 * rest_min);
    return out;
}

} // namespace detail

/// Fejer quotient (||D_n||_X / phi(X, K1/sigma)) / (||D_n||_Y / phi(Y, K2/sigma)) over n, any two spaces.
inline FloorReport fejer_floor_check(const SpaceSpec& X, const SpaceSpec& Y, const std::vector<double>& n_grid,
                                     const NFParams& params = {}, double tol = 1e-8) {
    using NormFn = std::function<double(const Witness&)>;
    using PhiFn = std::function<double(double)>;
    return detail::floor_campaign<NormFn, PhiFn>(
        n_grid, params, [&](const Witness& w) { return detail::checked_norm(X, w, tol); },
        [&](double d) { return detail::checked_fundamental(X, d); },
        [&](const Witness& w) { return detail::checked_norm(Y, w, tol); },
        [&](double d) { return detail::checked_fundamental(Y, d); });
}

/// Orlicz pair with Amemiya norms and phi(L(Phi), delta) = 1 / Phi^{-1}(1/delta).
inline FloorReport orlicz_lower_bound_check(const OrliczFunction& phi1, const OrliczFunction& phi2,
                                            const std::vector<double>& n_grid, const NFParams& params = {},
                                            double tol = 1e-8) {
    using NormFn = std::function<double(const Witness&)>;
    using PhiFn = std::function<double(double)>;
    return detail::floor_campaign<NormFn, PhiFn>(
        n_grid, params, [&](const Witness& w) { return orlicz_amemiya_norm(w, phi1, tol); },
        [&](double d) { return 1.0 / phi1.inverse(1.0 / d); },
        [&](const Witness& w) { return orlicz_amemiya_norm(w, phi2, tol); },
        [&](double d) { return 1.0 / phi2.inverse(1.0 / d); });
}

inline FloorReport lorentz_lower_bound_check(const LorentzPhiSpec& phi1, const LorentzPhiSpec& phi2,
                                             const std::vector<double>& n_grid, const NFParams& params = {},
                                             double tol = 1e-8) {
    return fejer_floor_check(SpaceSpec::lorentz(phi1), SpaceSpec::lorentz(phi2), n_grid, params, tol);
}

/// n ||D_n||_A Phi^{-1}(C/n) and ||D_n||_A Phi^{-1}(n/C) over n (A: Amemiya norm), with
/// max/min of each; the two readings of the argument of Phi^{-1}.
struct OrliczBracket {
    std::vector<double> n_grid;
    std::vector<double> amemiya;
    std::vector<double> small_argument; // n ||D_n|| Phi^{-1}(C/n)
    std::vector<double> large_argument; // ||D_n|| Phi^{-1}(n/C)
    double small_spread = 0.0;          // max/min
    double large_spread = 0.0;
};

inline OrliczBracket orlicz_fejer_bracket(const OrliczFunction& phi, const std::vector<double>& n_grid, double C = 1.0,
                                          double tol = 1e-8) {
    detail::require_n_grid(n_grid);
    require(C > 0.0, ErrorKind::InvalidArgument, "C must be positive");
    OrliczBracket out;
    out.n_grid = n_grid;
    out.amemiya = parallel_map(n_grid, [&](double n) {
        return orlicz_amemiya_norm(Witness::kernel(KernelSpec::fejer(n)), phi, tol);
    });
    auto spread = [](const std::vector<double>& v) {
        return *std::max_element(v.begin(), v.end()) / *std::min_element(v.begin(), v.end());
    };
    for (std::size_t i = 0; i < n_grid.size(); ++i) {
        const double n = n_grid[i];
        out.small_argument.push_back(n * out.amemiya[i] * phi.inverse(C / n));
        out.large_argument.push_back(out.amemiya[i] * phi.inverse(n / C));
    }
    out.small_spread = spread(out.small_argument);
    out.large_spread = spread(out.large_argument);
    return out;
}

// ---------------------------------------------------------------------------
// regularity

struct RegularityReport {
    bool regular = false;
    double best_c = 0.0;
    double bracket_lo = 0.0; // min over n of ||D_n|| / phi(X, C/n) at best_c
    double bracket_hi = 0.0;
    double bracket_ratio = 0.0;
    std::vector<double> n_grid;
    std::vector<double> norms;
    std::vector<double> c_grid;
    std::vector<double> ratios_per_c; // bracket ratio for each C (inf when C/n leaves (0, 1])
    std::string rule = "bracket ratio < 20";
};

inline std::vector<double> default_c_search() { return log_grid(1.0 / 16.0, 16.0, 9); }

inline RegularityReport regular_space_check(const SpaceSpec& X, const std::vector<double>& n_grid,
                                            const std::vector<double>& c_search = default_c_search(),
                                            double tol = 1e-8) {
    detail::require_n_grid(n_grid);
    require(!c_search.empty(), ErrorKind::InvalidArgument, "empty C search grid");
    RegularityReport out;
    out.n_grid = n_grid;
    out.c_grid = c_search;
    out.norms = parallel_map(n_grid, [&](double n) {
        return detail::checked_norm(X, Witness::kernel(KernelSpec::fejer(n)), tol);
    });
    out.bracket_ratio = infinity;
    for (double c : c_search) {
        require(c > 0.0, ErrorKind::InvalidArgument, "C must be positive");
        if (c / n_grid.front() > 1.0) {
            out.ratios_per_c.push_back(infinity);
            continue;
        }
        double lo = infinity;
        double hi = 0.0;
        for (std::size_t i = 0; i < n_grid.size(); ++i) {
            const double r = out.norms[i] / detail::checked_fundamental(X, c / n_grid[i]);
            lo = std::min(lo, r);
            hi = std::max(hi, r);
        }
        out.ratios_per_c.push_back(hi / lo);
        if (hi / lo < out.bracket_ratio) {
            out.bracket_ratio = hi / lo;
            out.best_c = c;
            out.bracket_lo = lo;
            out.bracket_hi = hi;
        }
    }
    out.regular = out.bracket_ratio < 20.0;
    return out;
}

} // namespace rilab
