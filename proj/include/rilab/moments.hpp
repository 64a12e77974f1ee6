#pragma once

// L_p norms and moment profiles h(p) = |f|_p of witnesses, and the Fejer
// moments in closed form through I(s) = int_R |sin y / y|^s dy.

#include <cmath>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rilab/error.hpp"
#include "rilab/numerics/quadrature.hpp"
#include "rilab/numerics/special.hpp"
#include "rilab/parallel.hpp"
#include "rilab/witness.hpp"

namespace rilab {

inline constexpr double default_tolerance = 1e-9;

/// |f|_p = (int |f|^p)^(1/p) on the witness's domain.
inline double lp_norm(const Witness& f, double p, double tol = default_tolerance) {
    require(p >= 1.0 && std::isfinite(p), ErrorKind::InvalidArgument, "lp_norm needs 1 <= p < inf");
    require(tol > 0.0, ErrorKind::InvalidArgument, "tolerance must be positive");
    // the p-th root divides the relative error by p
    const auto r = f.integrate_transform([p](double u) { return std::pow(u, p); }, PowerLaw{p, 1.0}, p * tol);
    return std::pow(r.value, 1.0 / p);
}

/// Same, asserting the domain the caller expects.
inline double lp_norm(const Witness& f, double p, Domain domain, double tol = default_tolerance) {
    require(f.domain() == domain, ErrorKind::InvalidArgument,
            "witness lives on " + to_string(f.domain()) + ", not " + to_string(domain));
    return lp_norm(f, p, tol);
}

inline double sup_norm(const Witness& f) { return f.sup(); }

struct MomentProfile {
    std::vector<double> p_grid;
    std::vector<double> values;
    std::optional<double> sup_norm;
    Domain domain = Domain::RealLine;
};

/// {1, 1.25, 1.25^2, ...} up to p_max, with p_max itself appended.
inline std::vector<double> geometric_p_grid(double p_max = 64.0, double ratio = 1.25) {
    require(p_max >= 1.0 && ratio > 1.0, ErrorKind::InvalidArgument, "invalid p-grid parameters");
    std::vector<double> grid;
    for (double p = 1.0; p < p_max * (1.0 - 1e-12); p *= ratio) grid.push_back(p);
    grid.push_back(p_max);
    return grid;
}

inline MomentProfile moment_profile(const Witness& f, std::span<const double> p_grid, double tol = default_tolerance,
                                    bool with_sup = true) {
    require(!p_grid.empty(), ErrorKind::InvalidArgument, "empty p-grid");
    for (std::size_t i = 0; i < p_grid.size(); ++i) {
        require(p_grid[i] >= 1.0, ErrorKind::InvalidArgument, "p-grid entries must be >= 1");
        if (i > 0) require(p_grid[i] > p_grid[i - 1], ErrorKind::InvalidArgument, "p-grid must be strictly increasing");
    }
    MomentProfile out;
    out.p_grid.assign(p_grid.begin(), p_grid.end());
    out.domain = f.domain();
    out.values = parallel_map(out.p_grid, [&](double p) {
        try {
            return lp_norm(f, p, tol);
        } catch (const Error& e) {
            throw Error(e.kind(), "moment at p = " + std::to_string(p) + ": " + e.what());
        }
    });
    if (with_sup) out.sup_norm = f.sup();
    return out;
}

/// I(s) = int_R |sin y / y|^s dy for s > 1.01.
/// Arches [k pi, (k+1) pi] for k < K by composite Gauss-Legendre; for k >= K,
///   sum_k int_0^pi sin^s u (k pi + u)^(-s) du
///     = sum_j binom(-s, j) pi^(-s-j) M_j zeta(s + j, K),  M_j = int_0^pi sin^s u u^j du,
/// with the Hurwitz zeta function. The series converges geometrically for K > 1.
inline double sinc_power_integral(double s, double tol = default_tolerance) {
    require(s > 1.01 && std::isfinite(s), ErrorKind::InvalidArgument, "sinc_power_integral needs s > 1.01");
    const double pi = std::numbers::pi;
    const int arches = std::max(16, static_cast<int>(std::ceil(2.0 * s)));
    // composite 20-point Gauss-Legendre over the arches, doubling the panels
    // until two successive sums agree (kept apart from the adaptive Kronrod
    // machinery used by lp_norm, so the two Fejer-moment paths stay independent)
    static const auto rule = quad::gauss_legendre(20);
    auto head_sum = [&](int per_arch) {
        double sum = 0.0;
        const double width = pi / per_arch;
        for (int k = 0; k < arches; ++k)
            for (int q = 0; q < per_arch; ++q) {
                const double lo = k * pi + q * width;
                double panel = 0.0;
                for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
                    const double y = lo + 0.5 * width * (1.0 + rule.nodes[i]);
                    panel += rule.weights[i] * std::pow(std::abs(special::sinc(y)), s);
                }
                sum += 0.5 * width * panel;
            }
        return sum;
    };
    int per_arch = 2 + static_cast<int>(std::sqrt(s));
    double head = head_sum(per_arch);
    for (;;) {
        per_arch *= 2;
        const double refined = head_sum(per_arch);
        const bool done = std::abs(refined - head) <= 0.1 * tol * refined;
        head = refined;
        if (done) break;
        require(per_arch < 4096, ErrorKind::QuadratureFailure,
                "sinc power integral at s = " + std::to_string(s) + " did not settle");
    }

    double tail = 0.0;
    double binom = 1.0; // binom(-s, j)
    quad::Options mopt;
    mopt.rel_tol = 1e-13;
    mopt.abs_tol = 1e-300;
    for (int j = 0; j < 200; ++j) {
        if (j > 0) binom *= (-s - (j - 1)) / j;
        const double moment = quad::integrate(
            [s, j](double u) { return std::pow(std::sin(u), s) * std::pow(u, j); }, 0.0, pi, mopt, "arch moment");
        const double term = binom * std::pow(pi, -s - j) * moment * special::hurwitz_zeta(s + j, arches);
        tail += term;
        if (std::abs(term) < 1e-17 * (head + std::abs(tail))) break;
    }
    return 2.0 * (head + tail);
}

/// |D_n|_p = (n^-1 2^(1-2p) I(2p))^(1/p) for the continuous Fejer kernel.
inline double fejer_moment_closed_form(double n, double p, double tol = default_tolerance) {
    require(n >= 1.0 && p >= 1.0, ErrorKind::InvalidArgument, "fejer_moment_closed_form needs n >= 1 and p >= 1");
    return std::pow(std::pow(2.0, 1.0 - 2.0 * p) * sinc_power_integral(2.0 * p, tol) / n, 1.0 / p);
}

/// sqrt(6 pi / s), the Laplace-method approximation of I(s) for large s.
inline double sinc_power_laplace(double s) { return std::sqrt(6.0 * std::numbers::pi / s); }

} // namespace rilab
