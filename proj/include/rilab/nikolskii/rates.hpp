#pragma once

// Rate campaigns: norm quotients of D_n against sigma^e1 (log sigma)^e2, the
// extrapolation bounds of Zygmund norms by L_r norms, and the Z-constant.

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "rilab/moments.hpp"
#include "rilab/nikolskii/functional.hpp"
#include "rilab/numerics/least_squares.hpp"
#include "rilab/numerics/roots.hpp"

namespace rilab {

struct RateFit {
    std::vector<double> n_grid;
    std::vector<double> sigma;
    std::vector<double> ratios;
    double c0 = 0.0;
    double e1 = 0.0;
    double e2 = 0.0;
    double residual_rms = 0.0;
    double predicted_e1 = 0.0;
    double predicted_e2 = 0.0;
    // refit on the odd-indexed half of the grid (NaN with fewer than 3 points)
    double odd_e1 = std::numeric_limits<double>::quiet_NaN();
    double odd_e2 = std::numeric_limits<double>::quiet_NaN();
};

namespace detail {

inline fit::LinearFit fit_log_rates(const std::vector<double>& sigma, const std::vector<double>& ratios) {
    std::vector<double> one(sigma.size(), 1.0);
    std::vector<double> ls;
    std::vector<double> lls;
    std::vector<double> y;
    for (std::size_t i = 0; i < sigma.size(); ++i) {
        ls.push_back(std::log(sigma[i]));
        lls.push_back(std::log(std::log(sigma[i])));
        y.push_back(std::log(ratios[i]));
    }
    return fit::ordinary_least_squares({one, ls, lls}, y);
}

} // namespace detail

/// log R = c0 + e1 log sigma + e2 log log sigma by least squares.
inline RateFit fit_rates(std::vector<double> n_grid, std::vector<double> sigma, std::vector<double> ratios) {
    require(n_grid.size() >= 6, ErrorKind::InvalidArgument, "rate fits need at least 6 grid points");
    require(sigma.size() == n_grid.size() && ratios.size() == n_grid.size(), ErrorKind::InvalidArgument,
            "rate fit length mismatch");
    for (std::size_t i = 0; i < sigma.size(); ++i) {
        require(sigma[i] > std::exp(1.0), ErrorKind::InvalidArgument, "rate fits need log sigma > 1");
        require(ratios[i] > 0.0 && std::isfinite(ratios[i]), ErrorKind::InvalidArgument,
                "rate fit needs positive ratios");
    }
    RateFit out;
    const auto f = detail::fit_log_rates(sigma, ratios);
    out.c0 = f.coefficients[0];
    out.e1 = f.coefficients[1];
    out.e2 = f.coefficients[2];
    out.residual_rms = f.residual_rms;
    std::vector<double> s_odd;
    std::vector<double> r_odd;
    for (std::size_t i = 1; i < sigma.size(); i += 2) {
        s_odd.push_back(sigma[i]);
        r_odd.push_back(ratios[i]);
    }
    if (s_odd.size() >= 3) {
        const auto g = detail::fit_log_rates(s_odd, r_odd);
        out.odd_e1 = g.coefficients[1];
        out.odd_e2 = g.coefficients[2];
    }
    out.n_grid = std::move(n_grid);
    out.sigma = std::move(sigma);
    out.ratios = std::move(ratios);
    return out;
}

namespace detail {

template <class Ratio>
RateFit rate_campaign(const std::vector<double>& n_grid, const NFParams& params, const Ratio& ratio) {
    params.validate();
    require(n_grid.size() >= 6, ErrorKind::InvalidArgument, "rate fits need at least 6 grid points");
    std::vector<double> sigma;
    for (double n : n_grid) {
        require(n >= 16.0, ErrorKind::InvalidArgument, "rate campaigns start at n = 16");
        sigma.push_back(params.sigma_at(n));
    }
    auto ratios = parallel_map(n_grid, [&](double n) {
        try {
            return ratio(n);
        } catch (const Error& e) {
            throw Error(e.kind(), "at n = " + SpaceSpec::fmt_number(n) + ": " + e.what());
        }
    });
    return fit_rates(n_grid, std::move(sigma), std::move(ratios));
}

} // namespace detail

/// ||D_n||_{G(a1,b1,alpha1,beta1)} / ||D_n||_{G(a2,b2,alpha2,beta2)} against
/// n^(1/b2 - 1/b1) (log n)^(beta1 - beta2), the rate stated for these pairs.
inline RateFit g_pair_rate_check(double a1, double b1, double alpha1, double beta1, double a2, double b2, double alpha2,
                                 double beta2, const std::vector<double>& n_grid, const NFParams& params = {},
                                 double tol = 1e-8) {
    require(1.0 <= a2 && a2 < b2 && b2 < a1 && a1 < b1 && std::isfinite(b1), ErrorKind::InvalidArgument,
            "g_pair_rate_check needs 1 <= a2 < b2 < a1 < b1 < inf");
    const auto X = GrandLebesgueSpec::zeta(a1, b1, alpha1, beta1);
    const auto Y = GrandLebesgueSpec::zeta(a2, b2, alpha2, beta2);
    auto out = detail::rate_campaign(n_grid, params, [&](double n) {
        const auto w = Witness::kernel(KernelSpec::fejer(n));
        return grand_lebesgue_norm(w, X, tol).value / grand_lebesgue_norm(w, Y, tol).value;
    });
    out.predicted_e1 = 1.0 / b2 - 1.0 / b1;
    out.predicted_e2 = beta1 - beta2;
    return out;
}

/// ||D_n||_{L_q (Log L)^gamma} / ||D_n||_{L_p (Log L)^-beta} against
/// sigma^(1/p - 1/q) (log sigma)^(gamma/q - beta/p).
inline RateFit zygmund_rate_check(double p, double q, double gamma, double beta, const std::vector<double>& n_grid,
                                  const NFParams& params = {}, double tol = 1e-8) {
    require(1.0 < p && p < q && gamma >= 0.0 && beta >= 0.0, ErrorKind::InvalidArgument,
            "zygmund_rate_check needs 1 < p < q and gamma, beta >= 0");
    const auto X = ZygmundSpec::make(q, gamma).orlicz();
    const auto Y = ZygmundSpec::make(p, -beta).orlicz();
    auto out = detail::rate_campaign(n_grid, params, [&](double n) {
        const auto w = Witness::kernel(KernelSpec::fejer(n));
        return orlicz_luxemburg_norm(w, X, tol).norm / orlicz_luxemburg_norm(w, Y, tol).norm;
    });
    out.predicted_e1 = 1.0 / p - 1.0 / q;
    out.predicted_e2 = gamma / q - beta / p;
    return out;
}

// ---------------------------------------------------------------------------
// Z = sigma^(1/s - 1/r) [r/(r-q)]^(gamma/r) [s/(p-s)]^(beta/s),  1 < s < p < q < r

inline double zygmund_z(double p, double q, double gamma, double beta, double sigma, double r, double s) {
    require(1.0 < s && s < p && p < q && q < r, ErrorKind::ConstraintViolation,
            "Z needs 1 < s < p < q < r (got s = " + SpaceSpec::fmt_number(s) + ", p = " + SpaceSpec::fmt_number(p) +
                ", q = " + SpaceSpec::fmt_number(q) + ", r = " + SpaceSpec::fmt_number(r) + ")");
    require(sigma > 1.0 && gamma >= 0.0 && beta >= 0.0, ErrorKind::InvalidArgument,
            "Z needs sigma > 1 and gamma, beta >= 0");
    const double log_z = (1.0 / s - 1.0 / r) * std::log(sigma) + gamma / r * std::log(r / (r - q)) +
                         beta / s * std::log(s / (p - s));
    return std::exp(log_z);
}

struct ZChoice {
    double r = 0.0;
    double s = 0.0;
    double z = 0.0;
};

/// The suggested choice r0 = q + gamma / (q log sigma), s0 = p - beta / (p log sigma).
inline ZChoice zygmund_z_suggested(double p, double q, double gamma, double beta, double sigma) {
    const double l = std::log(sigma);
    ZChoice c{q + gamma / (q * l), p - beta / (p * l), 0.0};
    c.z = zygmund_z(p, q, gamma, beta, sigma, c.r, c.s);
    return c;
}

/// Numerical minimum of Z. log Z splits into a function of r and one of s, each
/// minimized by a log-spaced scan of the distance to q (resp. p) and golden refinement.
/// With gamma = 0 (beta = 0) the infimum sits at r -> q (s -> p), approached to 1e-12.
inline ZChoice zygmund_z_minimum(double p, double q, double gamma, double beta, double sigma) {
    require(1.0 < p && p < q && sigma > 1.0, ErrorKind::ConstraintViolation, "Z needs 1 < p < q and sigma > 1");
    const double l = std::log(sigma);
    auto fr = [&](double t) {
        const double r = q + std::exp(t);
        return -l / r + gamma / r * std::log(r / (r - q));
    };
    auto fs = [&](double t) {
        const double s = p - std::exp(t);
        return l / s + beta / s * std::log(s / (p - s));
    };
    auto scan = [](const auto& f, double lo, double hi) {
        constexpr int points = 400;
        double best_t = lo;
        double best = f(lo);
        for (int i = 1; i <= points; ++i) {
            const double t = lo + (hi - lo) * i / points;
            const double v = f(t);
            if (v < best) {
                best = v;
                best_t = t;
            }
        }
        const double h = (hi - lo) / points;
        return roots::golden_min(f, std::max(lo, best_t - h), std::min(hi, best_t + h), 1e-12).x;
    };
    const double tr = scan(fr, std::log(1e-12), std::log(1e6 * q));
    const double ts = scan(fs, std::log(1e-12), std::log(p - 1.0) - 1e-9);
    ZChoice c{q + std::exp(tr), p - std::exp(ts), 0.0};
    c.z = zygmund_z(p, q, gamma, beta, sigma, c.r, c.s);
    return c;
}

// ---------------------------------------------------------------------------
// extrapolation

struct ExtrapolationRow {
    std::string witness;
    double exponent = 0.0; // r (direct) or s (inverse)
    double bracket = 0.0;  // [r/(r-q)]^(gamma/r) or [s/(p-s)]^(-beta/s)
    double zygmund_norm = 0.0;
    double lp_norm = 0.0;
    double ratio = 0.0;
};

struct ExtrapolationReport {
    std::vector<ExtrapolationRow> rows;
    double max_ratio = 0.0;
    double refined_max_ratio = 0.0; // on the grid with geometric midpoints added
    bool stable = false;            // refined max within 1% of the max
    bool monotone_near_end = false; // ratio increases away from the endpoint over the three nearest points
    std::string rule = "max ratio stable within 1% under grid refinement";
};

namespace detail {

inline std::vector<double> refine_geometric(std::vector<double> grid) {
    std::sort(grid.begin(), grid.end());
    std::vector<double> out;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        out.push_back(grid[i]);
        if (i + 1 < grid.size()) out.push_back(std::sqrt(grid[i] * grid[i + 1]));
    }
    return out;
}

// row(witness, e) for every pair; the grid is walked from the endpoint outward
template <class Row>
ExtrapolationReport extrapolation_campaign(const std::vector<KernelSpec>& witnesses, std::vector<double> grid,
                                           bool ascending_from_end, const Row& row) {
    require(!witnesses.empty() && !grid.empty(), ErrorKind::InvalidArgument, "empty extrapolation campaign");
    std::sort(grid.begin(), grid.end());
    if (!ascending_from_end) std::reverse(grid.begin(), grid.end());
    ExtrapolationReport out;
    auto run = [&](const std::vector<double>& g) {
        std::vector<std::pair<std::size_t, double>> jobs;
        for (std::size_t w = 0; w < witnesses.size(); ++w)
            for (double e : g) jobs.emplace_back(w, e);
        return parallel_map(jobs, [&](const std::pair<std::size_t, double>& j) {
            return row(witnesses[j.first], j.second);
        });
    };
    out.rows = run(grid);
    for (const auto& r : out.rows) out.max_ratio = std::max(out.max_ratio, r.ratio);
    auto fine = refine_geometric(grid);
    std::vector<double> extra;
    for (double e : fine)
        if (std::find(grid.begin(), grid.end(), e) == grid.end()) extra.push_back(e);
    out.refined_max_ratio = out.max_ratio;
    for (const auto& r : run(extra)) out.refined_max_ratio = std::max(out.refined_max_ratio, r.ratio);
    out.stable = std::isfinite(out.max_ratio) && out.refined_max_ratio <= out.max_ratio * 1.01;
    // per witness, the first three grid points moving away from the endpoint
    out.monotone_near_end = true;
    for (std::size_t w = 0; w < witnesses.size(); ++w) {
        const std::size_t base = w * grid.size();
        for (std::size_t i = 1; i < std::min<std::size_t>(3, grid.size()); ++i)
            if (!(out.rows[base + i].ratio > out.rows[base + i - 1].ratio)) out.monotone_near_end = false;
    }
    return out;
}

} // namespace detail

/// ||g||_{L_q (Log L)^gamma} / ( [r/(r-q)]^(gamma/r) |g|_r ) over r in r_grid, r > q.
inline ExtrapolationReport extrapolation_check(const std::vector<KernelSpec>& witnesses, double q, double gamma,
                                               const std::vector<double>& r_grid, double tol = 1e-8) {
    require(q >= 1.0 && gamma >= 0.0, ErrorKind::InvalidArgument, "extrapolation needs q >= 1 and gamma >= 0");
    for (double r : r_grid) require(r > q, ErrorKind::InvalidArgument, "r_grid must lie above q");
    const auto phi = ZygmundSpec::make(q, gamma).orlicz();
    return detail::extrapolation_campaign(witnesses, r_grid, true, [&](const KernelSpec& k, double r) {
        const auto w = Witness::kernel(k);
        ExtrapolationRow row{k.label(), r, std::pow(r / (r - q), gamma / r), 0.0, 0.0, 0.0};
        row.zygmund_norm = orlicz_luxemburg_norm(w, phi, tol).norm;
        row.lp_norm = lp_norm(w, r, tol);
        row.ratio = row.zygmund_norm / (row.bracket * row.lp_norm);
        return row;
    });
}

/// The inverse direction: [s/(p-s)]^(-beta/s) |g|_s / ||g||_{L_p (Log L)^-beta} over s in (1, p).
inline ExtrapolationReport inverse_extrapolation_check(const std::vector<KernelSpec>& witnesses, double p, double beta,
                                                       const std::vector<double>& s_grid, double tol = 1e-8) {
    require(p > 1.0 && beta >= 0.0, ErrorKind::InvalidArgument, "inverse extrapolation needs p > 1 and beta >= 0");
    for (double s : s_grid) require(s > 1.0 && s < p, ErrorKind::InvalidArgument, "s_grid must lie in (1, p)");
    const auto phi = ZygmundSpec::make(p, -beta).orlicz();
    return detail::extrapolation_campaign(witnesses, s_grid, false, [&](const KernelSpec& k, double s) {
        const auto w = Witness::kernel(k);
        ExtrapolationRow row{k.label(), s, std::pow(s / (p - s), -beta / s), 0.0, 0.0, 0.0};
        row.zygmund_norm = orlicz_luxemburg_norm(w, phi, tol).norm;
        row.lp_norm = lp_norm(w, s, tol);
        row.ratio = row.bracket * row.lp_norm / row.zygmund_norm;
        return row;
    });
}

} // namespace rilab
