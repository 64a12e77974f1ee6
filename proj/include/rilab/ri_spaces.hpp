#pragma once

// Norms and fundamental functions of rearrangement-invariant spaces:
// classical L_p, Grand Lebesgue G(psi) with the zeta-weight family,
// Orlicz (Luxemburg and Amemiya forms), Zygmund L_p (Log L)^r and Lorentz.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "rilab/error.hpp"
#include "rilab/moments.hpp"
#include "rilab/numerics/quadrature.hpp"
#include "rilab/numerics/roots.hpp"
#include "rilab/witness.hpp"

namespace rilab {

inline constexpr double infinity = std::numeric_limits<double>::infinity();

// ---------------------------------------------------------------------------
// zeta weights and Grand Lebesgue spaces

/// Crossover h of the two branches: (h-a)^alpha = (b-h)^beta, or (h-a)^alpha = h^beta when b = inf.
inline double zeta_crossover(double a, double b, double alpha, double beta) {
    auto gap = [&](double h) {
        const double right = std::isinf(b) ? beta * std::log(h) : beta * std::log(b - h);
        return alpha * std::log(h - a) - right;
    };
    double lo = a + 1e-12 * std::max(1.0, a);
    double hi = std::isinf(b) ? 2.0 * a + 2.0 : b - 1e-12 * std::max(1.0, b);
    if (std::isinf(b))
        for (int i = 0; i < 200 && gap(hi) < 0.0; ++i) hi *= 2.0;
    const double g_lo = gap(lo);
    const double g_hi = gap(hi);
    if (!(std::isfinite(g_lo) && std::isfinite(g_hi)) || std::signbit(g_lo) == std::signbit(g_hi))
        throw Error(ErrorKind::RootFailure, "zeta-weight branches do not cross for (a,b,alpha,beta) = (" +
                                                compact_number(a) + "," + compact_number(b) + "," +
                                                compact_number(alpha) + "," + compact_number(beta) + ")");
    return roots::bisect(gap, lo, hi, 0.0, 1e-15);
}

struct GrandLebesgueSpec {
    enum class PsiMode { ZetaWeight, UserTable };

    double a = 1.0;
    double b = 2.0;
    double alpha = 1.0;
    double beta = 1.0;
    PsiMode psi_mode = PsiMode::ZetaWeight;
    std::vector<double> table_p;   // UserTable only
    std::vector<double> table_psi; // UserTable only
    double crossover = 0.0;        // filled by make()

    static GrandLebesgueSpec zeta(double a, double b, double alpha, double beta) {
        GrandLebesgueSpec g;
        g.a = a;
        g.b = b;
        g.alpha = alpha;
        g.beta = beta;
        g.validate();
        g.crossover = zeta_crossover(a, b, alpha, beta);
        return g;
    }

    /// psi given at increasing p nodes; interpolated linearly in log psi. Support is (p_0, p_last).
    static GrandLebesgueSpec table(std::vector<double> p, std::vector<double> psi) {
        require(p.size() >= 2 && p.size() == psi.size(), ErrorKind::InvalidArgument, "psi table needs >= 2 nodes");
        for (std::size_t i = 0; i < p.size(); ++i) {
            require(psi[i] > 0.0 && std::isfinite(psi[i]), ErrorKind::InvalidArgument, "psi must be positive");
            if (i > 0) require(p[i] > p[i - 1], ErrorKind::InvalidArgument, "psi table nodes must increase");
        }
        require(p.front() >= 1.0, ErrorKind::InvalidArgument, "psi table must start at p >= 1");
        GrandLebesgueSpec g;
        g.psi_mode = PsiMode::UserTable;
        g.a = p.front();
        g.b = p.back();
        g.table_p = std::move(p);
        g.table_psi = std::move(psi);
        return g;
    }

    void validate() const {
        require(a >= 1.0 && a < b, ErrorKind::InvalidArgument, "Grand Lebesgue support needs 1 <= a < b");
        if (psi_mode == PsiMode::UserTable) return;
        if (std::isinf(b))
            require(alpha >= 0.0 && beta < 0.0, ErrorKind::InvalidArgument,
                    "for b = inf the zeta weight needs alpha >= 0 and beta < 0");
        else
            require(alpha >= 0.0 && beta >= 0.0 && alpha + beta > 0.0, ErrorKind::InvalidArgument,
                    "the zeta weight needs alpha, beta >= 0");
    }

    [[nodiscard]] bool contains(double p) const noexcept {
        if (psi_mode == PsiMode::UserTable) return p >= a && p <= b;
        return p > a && p < b;
    }

    /// zeta(p) = 1 / psi(p).
    [[nodiscard]] double weight(double p) const {
        require(contains(p), ErrorKind::OutOfSupport,
                "p = " + compact_number(p) + " outside (" + compact_number(a) + ", " + compact_number(b) + ")");
        if (psi_mode == PsiMode::UserTable) {
            const auto it = std::upper_bound(table_p.begin(), table_p.end(), p);
            const std::size_t hi = std::min<std::size_t>(std::max<std::ptrdiff_t>(it - table_p.begin(), 1),
                                                         table_p.size() - 1);
            const std::size_t lo = hi - 1;
            const double t = (p - table_p[lo]) / (table_p[hi] - table_p[lo]);
            const double log_psi = (1.0 - t) * std::log(table_psi[lo]) + t * std::log(table_psi[hi]);
            return std::exp(-log_psi);
        }
        if (p < crossover) return std::pow(p - a, alpha);
        return std::isinf(b) ? std::pow(p, beta) : std::pow(b - p, beta);
    }

    [[nodiscard]] double psi(double p) const { return 1.0 / weight(p); }

    /// Sample points inside the support: dense near both ends, geometric past the crossover when b = inf.
    [[nodiscard]] std::vector<double> sample_grid(int per_branch = 24) const {
        std::vector<double> grid;
        if (psi_mode == PsiMode::UserTable) {
            for (int i = 0; i <= 2 * per_branch; ++i) grid.push_back(a + (b - a) * i / (2.0 * per_branch));
            return grid;
        }
        const double h = crossover;
        for (int i = 1; i <= per_branch; ++i) {
            const double t = static_cast<double>(i) / per_branch;
            grid.push_back(a + (h - a) * t * t);
        }
        if (std::isinf(b)) {
            for (int i = 1; i <= 2 * per_branch; ++i) grid.push_back(h * std::pow(2.0, 12.0 * i / (2.0 * per_branch)));
        } else {
            for (int i = per_branch - 1; i >= 1; --i) {
                const double t = static_cast<double>(i) / per_branch;
                grid.push_back(b - (b - h) * t * t);
            }
        }
        return grid;
    }
};

inline double zeta_weight(double a, double b, double alpha, double beta, double p) {
    const auto g = GrandLebesgueSpec::zeta(a, b, alpha, beta);
    return g.weight(p);
}

struct SupResult {
    double value = 0.0;
    double argmax = 0.0;
    double refine_lo = 0.0; // golden-section interval around the grid argmax
    double refine_hi = 0.0;
    bool grid_stable = true; // doubling the grid did not find a larger value
};

namespace detail {

/// sup of f over the sorted grid, then golden refinement between the neighbours
/// of the argmax, then a check on the midpoints of the grid.
template <class F>
SupResult sup_on_grid(const F& f, const std::vector<double>& grid, double x_tol) {
    require(!grid.empty(), ErrorKind::EmptySupport, "empty grid");
    std::vector<double> values(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) values[i] = f(grid[i]);
    auto refine = [&](std::size_t i) {
        const double lo = grid[i == 0 ? 0 : i - 1];
        const double hi = grid[std::min(i + 1, grid.size() - 1)];
        SupResult r{values[i], grid[i], lo, hi, true};
        if (hi > lo) {
            const auto g = roots::golden_max(f, lo, hi, x_tol * std::max(1.0, std::abs(grid[i])));
            if (g.value > r.value) {
                r.value = g.value;
                r.argmax = g.x;
            }
        }
        return r;
    };
    const std::size_t arg = std::max_element(values.begin(), values.end()) - values.begin();
    SupResult best = refine(arg);
    // density doubling certificate
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        const double mid = 0.5 * (grid[i] + grid[i + 1]);
        const double v = f(mid);
        if (v > best.value * (1.0 + 1e-9)) {
            best.grid_stable = false;
            const auto g = roots::golden_max(f, grid[i], grid[i + 1], x_tol * std::max(1.0, std::abs(mid)));
            if (g.value > best.value) best = {g.value, g.x, grid[i], grid[i + 1], false};
        }
    }
    return best;
}

} // namespace detail

/// ||f||_{G(psi)} = sup_{p in (a,b)} |f|_p / psi(p) from a sampled profile; the ratio
/// is refined between grid nodes by interpolating log |f|_p linearly in 1/p.
inline SupResult grand_lebesgue_norm(const MomentProfile& profile, const GrandLebesgueSpec& spec) {
    std::vector<double> ps;
    std::vector<double> logs;
    for (std::size_t i = 0; i < profile.p_grid.size(); ++i)
        if (spec.contains(profile.p_grid[i]) && profile.values[i] > 0.0) {
            ps.push_back(profile.p_grid[i]);
            logs.push_back(std::log(profile.values[i]));
        }
    require(!ps.empty(), ErrorKind::EmptySupport, "moment grid misses the support of the Grand Lebesgue space");
    require(ps.size() >= 8, ErrorKind::InvalidArgument,
            "moment grid has only " + std::to_string(ps.size()) + " points inside the support (need 8)");
    auto interp = [&](double p) {
        const auto it = std::upper_bound(ps.begin(), ps.end(), p);
        const std::size_t hi = std::min<std::size_t>(std::max<std::ptrdiff_t>(it - ps.begin(), 1), ps.size() - 1);
        const std::size_t lo = hi - 1;
        const double t = (1.0 / p - 1.0 / ps[lo]) / (1.0 / ps[hi] - 1.0 / ps[lo]);
        return std::exp((1.0 - t) * logs[lo] + t * logs[hi]) * spec.weight(p);
    };
    return detail::sup_on_grid(interp, ps, 1e-10);
}

/// Same, evaluating |f|_p directly at every trial point.
inline SupResult grand_lebesgue_norm(const Witness& f, const GrandLebesgueSpec& spec, double tol = default_tolerance) {
    const auto grid = spec.sample_grid();
    return detail::sup_on_grid([&](double p) { return lp_norm(f, p, tol) * spec.weight(p); }, grid, 1e-7);
}

/// phi(G(psi), delta) = sup_p delta^(1/p) / psi(p).
inline SupResult grand_lebesgue_fundamental(const GrandLebesgueSpec& spec, double delta) {
    const auto grid = spec.sample_grid(64);
    return detail::sup_on_grid([&](double p) { return std::pow(delta, 1.0 / p) * spec.weight(p); }, grid, 1e-12);
}

/// Asymptotic fundamental function of G(a,b;alpha,beta) as delta -> 0:
///   b < inf: (beta b^2 / e)^beta delta^(1/b) |log delta|^(-beta);
///   b = inf: (|beta|/e)^|beta| |log delta|^(-|beta|)  (exact once |log delta| / |beta| passes the crossover).
inline double fundamental_asymptotic_g(double a, double b, double alpha, double beta, double delta) {
    (void)a;
    (void)alpha;
    require(delta > 0.0 && delta < 0.1, ErrorKind::OutOfRange, "asymptotic fundamental function needs delta < 0.1");
    const double L = std::abs(std::log(delta));
    if (std::isinf(b)) {
        const double m = std::abs(beta);
        return std::pow(m / std::numbers::e, m) * std::pow(L, -m);
    }
    return std::pow(beta * b * b / std::numbers::e, beta) * std::pow(delta, 1.0 / b) * std::pow(L, -beta);
}

// ---------------------------------------------------------------------------
// Orlicz functions

struct OrliczFunction {
    std::string name;
    std::function<double(double)> phi; // evaluated at |u|
    PowerLaw small;                     // phi(u) ~ small.coefficient u^small.exponent as u -> 0

    [[nodiscard]] double operator()(double u) const { return phi(std::abs(u)); }

    /// Phi^{-1}(y) by log-space bisection.
    [[nodiscard]] double inverse(double y) const {
        require(y > 0.0, ErrorKind::InvalidArgument, "Orlicz inverse needs y > 0");
        return roots::inverse_increasing(phi, y, 1e-15);
    }

    static OrliczFunction power(double p) {
        require(p >= 1.0, ErrorKind::InvalidArgument, "power Orlicz function needs p >= 1");
        return {"u^" + compact_number(p), [p](double u) { return std::pow(u, p); }, {p, 1.0}};
    }

    /// exp(u) - 1 - u.
    static OrliczFunction exponential() {
        return {"exp(u)-1-u",
                [](double u) {
                    if (u < 1e-3) return u * u * (0.5 + u * (1.0 / 6.0 + u / 24.0));
                    return std::expm1(u) - u;
                },
                {2.0, 0.5}};
    }

    /// Diagnostics: growth at the ends and convexity on a log grid.
    [[nodiscard]] std::vector<std::string> check() const {
        std::vector<std::string> out;
        if (!(phi(1e-6) / 1e-6 < 1e-3)) out.push_back(name + ": Phi(u)/u does not vanish at u = 1e-6");
        if (!(phi(1e6) / 1e6 > 1e3)) out.push_back(name + ": Phi(u)/u does not blow up at u = 1e6");
        for (int i = 0; i < 240; ++i) {
            const double u = std::pow(10.0, -6.0 + 12.0 * i / 240.0);
            const double h = 0.01 * u;
            const double d2 = phi(u + h) - 2.0 * phi(u) + phi(u - h);
            if (d2 < -1e-9 * phi(u)) {
                out.push_back(name + ": not convex near u = " + compact_number(u));
                break;
            }
            if (phi(u + h) < phi(u)) {
                out.push_back(name + ": not increasing near u = " + compact_number(u));
                break;
            }
        }
        return out;
    }
};

struct ZygmundSpec {
    double p = 2.0;
    double r = 0.0;
    double C = std::numbers::e;

    /// C starts at e + |r| p and doubles until u^p log^r(C + u) is convex and increasing on a test grid.
    static ZygmundSpec make(double p, double r) {
        require(p >= 1.0 && std::isfinite(p), ErrorKind::InvalidArgument, "Zygmund space needs p >= 1");
        require(std::isfinite(r), ErrorKind::InvalidArgument, "Zygmund log exponent must be finite");
        ZygmundSpec z{p, r, std::numbers::e + std::abs(r) * p};
        for (int i = 0; i < 60 && !z.convex(); ++i) z.C *= 2.0;
        require(z.convex(), ErrorKind::InvalidArgument, "no convex Zygmund function found");
        return z;
    }

    [[nodiscard]] double phi(double u) const {
        u = std::abs(u);
        if (u == 0.0) return 0.0;
        return std::pow(u, p) * std::pow(std::log(C + u), r);
    }

    [[nodiscard]] bool convex() const {
        // log-space test grid over 24 decades, second differences relative to the value
        double prev_d = -infinity;
        for (int i = 0; i <= 480; ++i) {
            const double u = std::pow(10.0, -12.0 + 24.0 * i / 480.0);
            const double h = 1e-3 * u;
            const double d1 = (phi(u + h) - phi(u - h)) / (2.0 * h);
            const double d2 = (phi(u + h) - 2.0 * phi(u) + phi(u - h)) / (h * h);
            if (d1 < 0.0 || d2 < -1e-6 * std::abs(phi(u)) / (u * u)) return false;
            if (d1 < prev_d * (1.0 - 1e-6)) return false;
            prev_d = d1;
        }
        return true;
    }

    [[nodiscard]] OrliczFunction orlicz() const {
        const ZygmundSpec self = *this;
        return {"u^" + compact_number(p) + " log^" + compact_number(r) + "(" + compact_number(C) + "+u)",
                [self](double u) { return self.phi(u); },
                {p, std::pow(std::log(C), r)}};
    }
};

struct LuxemburgResult {
    double norm = 0.0;
    double constraint = 0.0; // int Phi(|f| / norm)
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
};

namespace detail {

inline double orlicz_modular(const Witness& f, const OrliczFunction& phi, double v, double tol) {
    // int Phi(|f| / v); small arguments follow the power law of Phi
    const auto r = f.integrate_transform([&](double u) { return phi(u / v); },
                                         PowerLaw{phi.small.exponent, phi.small.coefficient *
                                                                          std::pow(v, -phi.small.exponent)},
                                         tol);
    return r.value;
}

} // namespace detail

/// inf{ v > 0 : int Phi(|f|/v) <= 1 } by regula falsi on log J(v) = 0.
inline LuxemburgResult orlicz_luxemburg_norm(const Witness& f, const OrliczFunction& phi,
                                             double tol = default_tolerance) {
    auto J = [&](double log_v) {
        try {
            return std::log(detail::orlicz_modular(f, phi, std::exp(log_v), 0.01 * tol));
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::DivergentIntegral)
                throw Error(ErrorKind::NotIntegrable, std::string("Orlicz modular diverges: ") + e.what());
            throw;
        }
    };
    double s = f.sup();
    require(s > 0.0, ErrorKind::InvalidArgument, "Luxemburg norm of the zero function");
    double lo = std::log(s) - 1.0;
    double hi = std::log(s) + 1.0;
    int budget = 200;
    while (J(lo) <= 0.0 && budget-- > 0) lo -= 2.0;
    while (J(hi) >= 0.0 && budget-- > 0) hi += 2.0;
    if (budget <= 0) throw Error(ErrorKind::NotIntegrable, "no finite Luxemburg bracket for " + f.label());
    const double t = roots::illinois(J, lo, hi, 0.01 * tol, 1e-16, 400);
    const double v = std::exp(t);
    return {v, std::exp(J(t)), std::exp(lo), std::exp(hi)};
}

/// inf_{v > 0} (1 + int Phi(v |f|)) / v by golden section on log v.
inline double orlicz_amemiya_norm(const Witness& f, const OrliczFunction& phi, double tol = default_tolerance) {
    const double lux = orlicz_luxemburg_norm(f, phi, 1e-4).norm;
    auto objective = [&](double log_v) {
        const double v = std::exp(log_v);
        double modular;
        try {
            modular = detail::orlicz_modular(f, phi, 1.0 / v, 0.01 * tol);
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::DivergentIntegral)
                throw Error(ErrorKind::NotIntegrable, std::string("Orlicz modular diverges: ") + e.what());
            throw;
        }
        return (1.0 + modular) / v;
    };
    // start the bracket at 1/lux and widen it until the unimodal objective turns up on both sides
    const double center = -std::log(lux);
    double lo = center - 1.0;
    double hi = center + 1.0;
    for (int i = 0; i < 60 && objective(hi) < objective(hi - 0.5); ++i) hi += 1.0;
    for (int i = 0; i < 60 && objective(lo) < objective(lo + 0.5); ++i) lo -= 1.0;
    return roots::golden_min(objective, lo, hi, 1e-9).value;
}

inline double zygmund_norm(const Witness& f, double p, double r, double tol = default_tolerance) {
    return orlicz_luxemburg_norm(f, ZygmundSpec::make(p, r).orlicz(), tol).norm;
}

// ---------------------------------------------------------------------------
// Lorentz spaces

struct LorentzPhiSpec {
    std::string name;
    std::function<double(double)> phi;

    [[nodiscard]] double operator()(double delta) const { return delta <= 0.0 ? 0.0 : phi(delta); }

    static LorentzPhiSpec power(double q) {
        require(q >= 1.0, ErrorKind::InvalidArgument, "Lorentz power generator needs q >= 1");
        return {"delta^(1/" + compact_number(q) + ")", [q](double d) { return std::pow(d, 1.0 / q); }};
    }

    /// delta^(1/q) log^s(C + 1/delta), C large enough for monotonicity and quasi-concavity.
    static LorentzPhiSpec power_log(double q, double s) {
        require(q >= 1.0, ErrorKind::InvalidArgument, "Lorentz generator needs q >= 1");
        require(s >= 0.0 || q > 1.0, ErrorKind::InvalidArgument, "negative log power needs q > 1");
        double bound = s > 0.0 ? s * q : 0.0;
        if (s < 0.0) bound = std::max(bound, -s / (1.0 - 1.0 / q));
        const double C = std::exp(bound + 1.0);
        return {"delta^(1/" + compact_number(q) + ") log^" + compact_number(s) + "(" + compact_number(C) + "+1/delta)",
                [q, s, C](double d) { return std::pow(d, 1.0 / q) * std::pow(std::log(C + 1.0 / d), s); }};
    }

    /// Diagnostics: monotone, phi(delta)/delta nonincreasing, phi(0+) small relative to phi(1).
    [[nodiscard]] std::vector<std::string> check() const {
        std::vector<std::string> out;
        double prev = 0.0;
        double prev_ratio = infinity;
        for (int i = 0; i <= 200; ++i) {
            const double d = std::pow(10.0, -16.0 + 18.0 * i / 200.0);
            const double v = phi(d);
            if (v < prev) {
                out.push_back(name + ": not increasing near " + compact_number(d));
                break;
            }
            if (v / d > prev_ratio * (1.0 + 1e-12)) {
                out.push_back(name + ": not quasi-concave near " + compact_number(d));
                break;
            }
            prev = v;
            prev_ratio = v / d;
        }
        // phi(1e-16) is 1e-8 already for delta^(1/2), so look much further down
        if (!(phi(1e-300) < 1e-8 * phi(1.0))) out.push_back(name + ": phi(0+) is not small");
        return out;
    }
};

inline double distribution_function(const Witness& f, double lambda) { return f.distribution(lambda); }

/// int_0^sup phi(m{|f| > lambda}) d lambda.
inline double lorentz_norm(const Witness& f, const LorentzPhiSpec& phi, double tol = 1e-8) {
    try {
        return f.level_integral([&](double d) { return phi(d); }, tol);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::DivergentIntegral)
            throw Error(ErrorKind::DivergentNorm, "Lorentz norm of " + f.label() + " diverges: " + e.what());
        throw;
    }
}

// ---------------------------------------------------------------------------
// Tagged space description

struct ClassicalLp {
    double p = 2.0;
};

struct OrliczSpec {
    OrliczFunction phi;
};

struct LorentzSpec {
    LorentzPhiSpec phi;
};

struct SpaceSpec {
    std::variant<ClassicalLp, GrandLebesgueSpec, OrliczSpec, ZygmundSpec, LorentzSpec> kind;
    std::string name;

    static SpaceSpec lp(double p) {
        require(p >= 1.0, ErrorKind::InvalidArgument, "L_p needs p >= 1");
        return {ClassicalLp{p}, "lp(" + fmt_number(p) + ")"};
    }
    static SpaceSpec grand(double a, double b, double alpha, double beta) {
        return {GrandLebesgueSpec::zeta(a, b, alpha, beta),
                "grand(" + fmt_number(a) + "," + fmt_number(b) + "," + fmt_number(alpha) + "," + fmt_number(beta) +
                    ")"};
    }
    static SpaceSpec orlicz(OrliczFunction phi) {
        auto n = "orlicz[" + phi.name + "]";
        return {OrliczSpec{std::move(phi)}, n};
    }
    static SpaceSpec zygmund(double p, double r) {
        return {ZygmundSpec::make(p, r), "orlicz-zygmund(" + fmt_number(p) + "," + fmt_number(r) + ")"};
    }
    static SpaceSpec lorentz(LorentzPhiSpec phi) {
        auto n = "lorentz[" + phi.name + "]";
        return {LorentzSpec{std::move(phi)}, n};
    }

    [[nodiscard]] std::string kind_name() const {
        static const char* names[] = {"ClassicalLp", "GrandLebesgue", "Orlicz", "Zygmund", "Lorentz"};
        return names[kind.index()];
    }

    static std::string fmt_number(double x) {
        if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.10g", x);
        return buf;
    }
};

/// Norm of f in the space. tol is the relative tolerance of the underlying integrals.
inline double space_norm(const SpaceSpec& space, const Witness& f, double tol = default_tolerance) {
    struct Visitor {
        const Witness& f;
        double tol;
        double operator()(const ClassicalLp& s) const { return lp_norm(f, s.p, tol); }
        double operator()(const GrandLebesgueSpec& s) const { return grand_lebesgue_norm(f, s, tol).value; }
        double operator()(const OrliczSpec& s) const { return orlicz_luxemburg_norm(f, s.phi, tol).norm; }
        double operator()(const ZygmundSpec& s) const { return orlicz_luxemburg_norm(f, s.orlicz(), tol).norm; }
        double operator()(const LorentzSpec& s) const { return lorentz_norm(f, s.phi, std::max(tol, 1e-9)); }
    };
    return std::visit(Visitor{f, tol}, space.kind);
}

/// phi(X, delta) = || 1_A ||_X with m(A) = delta.
inline double fundamental_function(const SpaceSpec& space, double delta) {
    require(delta > 0.0 && delta <= 1.0, ErrorKind::OutOfRange,
            "fundamental function needs delta in (0, 1], got " + compact_number(delta));
    struct Visitor {
        double delta;
        double operator()(const ClassicalLp& s) const { return std::pow(delta, 1.0 / s.p); }
        double operator()(const GrandLebesgueSpec& s) const { return grand_lebesgue_fundamental(s, delta).value; }
        double operator()(const OrliczSpec& s) const { return 1.0 / s.phi.inverse(1.0 / delta); }
        double operator()(const ZygmundSpec& s) const { return 1.0 / s.orlicz().inverse(1.0 / delta); }
        double operator()(const LorentzSpec& s) const { return s.phi(delta); }
    };
    return std::visit(Visitor{delta}, space.kind);
}

struct FundamentalCurve {
    enum class Mode { Exact, Asymptotic };
    std::vector<double> delta_grid;
    std::vector<double> values;
    Mode mode = Mode::Exact;
};

inline FundamentalCurve fundamental_curve(const SpaceSpec& space, const std::vector<double>& deltas) {
    FundamentalCurve c;
    c.delta_grid = deltas;
    for (double d : deltas) c.values.push_back(fundamental_function(space, d));
    return c;
}

} // namespace rilab
