#pragma once

// Witness functions of the Nikol'skii classes A(n): the renormalized Fejer
// kernels on the line and on the circle, the two-parameter family
// D_n^{alpha,beta}(x) = int_{-n}^{n} e^{itx} (1 - (|t|/n)^alpha)^beta dt,
// and integer powers [D_n]^m.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "rilab/error.hpp"
#include "rilab/numerics/quadrature.hpp"
#include "rilab/numerics/special.hpp"

namespace rilab {

enum class Domain { RealLine, Circle };

inline std::string to_string(Domain d) { return d == Domain::RealLine ? "RealLine" : "Circle"; }

enum class KernelFamily { FejerContinuous, FejerDiscrete, Generalized, Power };

inline std::string to_string(KernelFamily f) {
    switch (f) {
    case KernelFamily::FejerContinuous: return "FejerContinuous";
    case KernelFamily::FejerDiscrete: return "FejerDiscrete";
    case KernelFamily::Generalized: return "Generalized";
    case KernelFamily::Power: return "Power";
    }
    return "?";
}

/// Ten significant digits, no trailing zeros.
inline std::string compact_number(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

struct KernelSpec {
    KernelFamily family = KernelFamily::FejerContinuous;
    double degree = 1.0;
    double alpha = 0.0; // Generalized only
    double beta = 0.0;  // Generalized only
    int power = 1;      // Power only

    static KernelSpec fejer(double n) { return {KernelFamily::FejerContinuous, n}; }
    static KernelSpec fejer_discrete(int n) { return {KernelFamily::FejerDiscrete, static_cast<double>(n)}; }
    static KernelSpec generalized(double n, double alpha, double beta) {
        return {KernelFamily::Generalized, n, alpha, beta};
    }
    static KernelSpec power_of_fejer(double n, int m) { return {KernelFamily::Power, n, 0.0, 0.0, m}; }

    void validate() const {
        require(std::isfinite(degree) && degree >= 1.0, ErrorKind::InvalidArgument,
                "kernel degree must be >= 1, got " + std::to_string(degree));
        if (family == KernelFamily::FejerDiscrete)
            require(degree == std::floor(degree), ErrorKind::InvalidArgument, "discrete Fejer degree must be an integer");
        if (family == KernelFamily::Generalized)
            require(alpha > 0.0 && beta > 0.0 && std::isfinite(alpha) && std::isfinite(beta),
                    ErrorKind::InvalidArgument, "generalized kernel needs alpha > 0 and beta > 0");
        if (family == KernelFamily::Power)
            require(power >= 1, ErrorKind::InvalidArgument, "power kernel needs m >= 1");
    }

    [[nodiscard]] Domain domain() const {
        return family == KernelFamily::FejerDiscrete ? Domain::Circle : Domain::RealLine;
    }

    /// Same text form the config parser reads, e.g. "generalized(256,2,1)".
    [[nodiscard]] std::string label() const {
        switch (family) {
        case KernelFamily::FejerContinuous: return "fejer(" + compact_number(degree) + ")";
        case KernelFamily::FejerDiscrete: return "fejer-discrete(" + compact_number(degree) + ")";
        case KernelFamily::Generalized:
            return "generalized(" + compact_number(degree) + "," + compact_number(alpha) + "," + compact_number(beta) +
                   ")";
        case KernelFamily::Power: return "fejer-power(" + compact_number(degree) + "," + std::to_string(power) + ")";
        }
        return "?";
    }
};

/// sin^2(nx/2) / (n^2 x^2), equal to 1/4 at x = 0.
inline double eval_fejer_continuous(double n, double x) noexcept {
    const double s = special::sinc(0.5 * (n * x));
    return 0.25 * s * s;
}

/// sin^2(nx/2) / (n^2 sin^2(x/2)), equal to 1 at x = 0.
inline double eval_fejer_discrete(int n, double x) noexcept {
    // fold into [-pi, pi]; the kernel is 2 pi periodic
    constexpr double two_pi = 2.0 * std::numbers::pi;
    if (std::abs(x) > std::numbers::pi) x -= two_pi * std::round(x / two_pi);
    const double num = special::sinc(0.5 * (n * x));
    const double den = special::sinc(0.5 * x);
    const double r = num / den;
    return r * r;
}

inline double eval_power(double n, int m, double x) noexcept {
    const double d = eval_fejer_continuous(n, x);
    double out = 1.0;
    for (int i = 0; i < m; ++i) out *= d;
    return out;
}

/// Spectral profile (1 - u^alpha)^beta on [0, 1], accurate near both ends.
inline double generalized_profile(double alpha, double beta, double u) noexcept {
    if (u <= 0.0) return 1.0;
    if (u >= 1.0) return 0.0;
    const double one_minus = -std::expm1(alpha * std::log(u));
    return std::exp(beta * std::log(one_minus));
}

/// Unit-degree profile K(y) = 2 int_0^1 cos(uy) (1 - u^alpha)^beta du; D_n^{a,b}(x) = n K(nx).
/// Panels follow the zeros of cos(uy), so each panel carries at most one half-oscillation.
inline double eval_generalized_unit(double alpha, double beta, double y, double abs_tol = 1e-13,
                                    int max_panels = 200000) {
    y = std::abs(y);
    const double half_periods = y / std::numbers::pi;
    require(half_periods < max_panels, ErrorKind::QuadratureFailure,
            "generalized kernel at |nx| = " + std::to_string(y) + " exceeds the panel budget");
    std::vector<double> breaks{0.0};
    if (y > 0.0) {
        for (double z = 0.5 * std::numbers::pi / y; z < 1.0; z += std::numbers::pi / y) breaks.push_back(z);
    }
    breaks.push_back(1.0);
    quad::Options opt;
    opt.abs_tol = abs_tol;
    opt.rel_tol = 1e-13;
    opt.max_subdivisions = 4000 + 40 * static_cast<int>(breaks.size());
    auto r = quad::integrate_panels(
        [&](double u) { return std::cos(u * y) * generalized_profile(alpha, beta, u); },
        std::span<const double>(breaks), opt);
    if (!r.converged && r.abs_error > 100.0 * abs_tol)
        throw Error(ErrorKind::QuadratureFailure, "generalized kernel quadrature at y = " + std::to_string(y) +
                                                      " stalled with error " + std::to_string(r.abs_error));
    return 2.0 * r.value;
}

/// 2 int_0^n cos(tx) (1 - (t/n)^alpha)^beta dt.
inline double eval_generalized(double n, double alpha, double beta, double x, double abs_tol = 1e-12) {
    require(n >= 1.0 && alpha > 0.0 && beta > 0.0, ErrorKind::InvalidArgument, "invalid generalized kernel parameters");
    return n * eval_generalized_unit(alpha, beta, n * x, abs_tol / n);
}

/// Large-|y| expansion of the unit profile K. The cusp of (1 - u^alpha)^beta at
/// u = 0 contributes non-oscillating terms c_j |y|^(-1-j alpha) (absent when
/// j alpha is an even integer); the endpoint u = 1, where the profile behaves
/// like (alpha w)^beta (1 + b1 w + b2 w^2 + ...) with w = 1 - u, contributes
/// e_i |y|^(-1-beta-i) cos(|y| - pi (beta+1+i)/2).
struct GeneralizedAsymptotics {
    struct Term {
        double coefficient;
        double exponent; // decay exponent 1 + gamma
        bool oscillating;
    };
    double alpha = 1.0;
    double beta = 1.0;
    std::vector<Term> terms;

    static GeneralizedAsymptotics of(double alpha, double beta) {
        GeneralizedAsymptotics out{alpha, beta, {}};
        constexpr int endpoint_terms = 7;
        const double cutoff = beta + endpoint_terms;
        double binom = 1.0; // binom(beta, j) (-1)^j
        for (int j = 1; j <= 64 && j * alpha <= cutoff; ++j) {
            binom *= -(beta - (j - 1)) / j;
            const double gamma = j * alpha;
            const double half = 0.5 * (gamma + 1.0);
            // cos(pi (gamma+1)/2) vanishes exactly when gamma is an even integer
            const bool even_integer = gamma == std::floor(gamma) && std::fmod(gamma, 2.0) == 0.0;
            if (even_integer || binom == 0.0) continue;
            out.terms.push_back({2.0 * binom * std::tgamma(gamma + 1.0) * std::cos(std::numbers::pi * half),
                                 gamma + 1.0, false});
        }
        // (1 - (1-w)^alpha) / (alpha w) = sum c_k w^k, c_k = (-1)^k binom(alpha, k+1) / alpha,
        // raised to the power beta by the usual power-series recursion
        std::array<double, endpoint_terms> c{};
        std::array<double, endpoint_terms> b{};
        double bin = alpha; // binom(alpha, k+1)
        for (int k = 0; k < endpoint_terms; ++k) {
            if (k > 0) bin *= (alpha - k) / (k + 1);
            c[k] = (k % 2 == 0 ? 1.0 : -1.0) * bin / alpha;
        }
        b[0] = 1.0;
        for (int k = 1; k < endpoint_terms; ++k) {
            double acc = 0.0;
            for (int j = 1; j <= k; ++j) acc += ((beta + 1.0) * j - k) * c[j] * b[k - j];
            b[k] = acc / k;
        }
        const double lead = std::pow(alpha, beta);
        for (int i = 0; i < endpoint_terms; ++i) {
            if (b[i] == 0.0) continue;
            out.terms.push_back({2.0 * lead * b[i] * std::tgamma(beta + i + 1.0), beta + i + 1.0, true});
        }
        return out;
    }

    [[nodiscard]] double value(double y) const {
        y = std::abs(y);
        double sum = 0.0;
        for (const auto& t : terms) {
            const double mag = t.coefficient * std::pow(y, -t.exponent);
            sum += t.oscillating ? mag * std::cos(y - 0.5 * std::numbers::pi * t.exponent) : mag;
        }
        return sum;
    }

    /// Sum of the absolute term magnitudes.
    [[nodiscard]] double envelope(double y) const {
        y = std::abs(y);
        double sum = 0.0;
        for (const auto& t : terms) sum += std::abs(t.coefficient) * std::pow(y, -t.exponent);
        return sum;
    }

    /// Slowest decay exponent among the terms present.
    [[nodiscard]] double slowest_exponent() const {
        double e = std::numeric_limits<double>::infinity();
        for (const auto& t : terms) e = std::min(e, t.exponent);
        return e;
    }
};

inline double evaluate(const KernelSpec& spec, double x) {
    switch (spec.family) {
    case KernelFamily::FejerContinuous: return eval_fejer_continuous(spec.degree, x);
    case KernelFamily::FejerDiscrete: return eval_fejer_discrete(static_cast<int>(spec.degree), x);
    case KernelFamily::Generalized: return eval_generalized(spec.degree, spec.alpha, spec.beta, x);
    case KernelFamily::Power: return eval_power(spec.degree, spec.power, x);
    }
    return 0.0;
}

/// Degree of the class A(.) the witness belongs to: n, or m n for [D_n]^m.
inline double class_degree(const KernelSpec& spec) {
    return spec.family == KernelFamily::Power ? spec.power * spec.degree : spec.degree;
}

/// min(1/4, 1/(n x)^2), a pointwise majorant of the continuous Fejer kernel.
inline double envelope_bound(double n, double x) noexcept {
    const double nx = n * x;
    if (nx == 0.0) return 0.25;
    return std::min(0.25, 1.0 / (nx * nx));
}

/// Peak value: every family attains its maximum at x = 0.
inline double kernel_peak(const KernelSpec& spec) {
    switch (spec.family) {
    case KernelFamily::FejerContinuous: return 0.25;
    case KernelFamily::FejerDiscrete: return 1.0;
    case KernelFamily::Power: return std::pow(0.25, spec.power);
    case KernelFamily::Generalized:
        // 2n int_0^1 (1-u^a)^b du = 2n B(1/a, b+1) / a
        return 2.0 * spec.degree * std::beta(1.0 / spec.alpha, spec.beta + 1.0) / spec.alpha;
    }
    return 0.0;
}

} // namespace rilab
