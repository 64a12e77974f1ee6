#pragma once

// The two-space functional W_n(X, Y, K1, K2) evaluated on explicit witnesses:
//   W = (||t||_X / phi(X, K1/sigma)) / (||t||_Y / phi(Y, K2/sigma)).
// A finite witness family only ever gives a lower bound for the sup over A(n).

#include <cmath>
#include <string>
#include <vector>

#include "rilab/error.hpp"
#include "rilab/kernels.hpp"
#include "rilab/parallel.hpp"
#include "rilab/ri_spaces.hpp"
#include "rilab/witness.hpp"

namespace rilab {

/// sigma(n) = coefficient * n^exponent.
struct SigmaRule {
    double coefficient = 1.0;
    double exponent = 1.0;

    [[nodiscard]] double operator()(double n) const { return coefficient * std::pow(n, exponent); }

    void validate() const {
        require(coefficient > 0.0 && exponent > 0.0 && std::isfinite(coefficient) && std::isfinite(exponent),
                ErrorKind::InvalidArgument, "sigma rule needs a positive coefficient and exponent");
    }

    [[nodiscard]] std::string describe() const {
        return SpaceSpec::fmt_number(coefficient) + "*n^" + SpaceSpec::fmt_number(exponent);
    }
};

struct NFParams {
    double K1 = 1.0;
    double K2 = 1.0;
    SigmaRule sigma;

    void validate() const {
        require(K1 > 0.0 && K2 > 0.0 && std::isfinite(K1) && std::isfinite(K2), ErrorKind::InvalidArgument,
                "K1 and K2 must be positive");
        sigma.validate();
    }

    /// sigma(n), which must be at least 3 where the functional is evaluated.
    [[nodiscard]] double sigma_at(double n) const {
        const double s = sigma(n);
        require(s >= 3.0, ErrorKind::InvalidArgument,
                "sigma(" + SpaceSpec::fmt_number(n) + ") = " + SpaceSpec::fmt_number(s) + " is below 3");
        return s;
    }
};

struct NFEvaluation {
    double n = 0.0;
    double sigma = 0.0;
    KernelSpec witness;
    SpaceSpec space_x;
    SpaceSpec space_y;
    double K1 = 1.0;
    double K2 = 1.0;
    double value = 0.0;
    double norm_x = 0.0;
    double norm_y = 0.0;
    double phi_x = 0.0; // phi(X, K1 / sigma)
    double phi_y = 0.0; // phi(Y, K2 / sigma)

    [[nodiscard]] double recompose() const { return (norm_x / phi_x) / (norm_y / phi_y); }
};

namespace detail {

inline double checked_norm(const SpaceSpec& space, const Witness& w, double tol) {
    double v = 0.0;
    try {
        v = space_norm(space, w, tol);
    } catch (const Error& e) {
        throw Error(ErrorKind::NormFailure, "norm of " + w.label() + " in " + space.name + " failed: " + e.what());
    }
    require(std::isfinite(v) && v > 0.0, ErrorKind::NormFailure,
            "norm of " + w.label() + " in " + space.name + " is not a positive number");
    return v;
}

inline double checked_fundamental(const SpaceSpec& space, double delta) {
    try {
        return fundamental_function(space, delta);
    } catch (const Error& e) {
        throw Error(ErrorKind::NormFailure, "fundamental function of " + space.name + " failed: " + e.what());
    }
}

} // namespace detail

/// Quotient for an already built witness, on the class A(n).
inline NFEvaluation nf_witness_value(const SpaceSpec& X, const SpaceSpec& Y, const Witness& w, double n,
                                     const NFParams& params, double tol = 1e-8) {
    params.validate();
    NFEvaluation out;
    out.n = n;
    out.sigma = params.sigma_at(n);
    if (const auto* k = w.kernel_spec()) out.witness = *k;
    out.space_x = X;
    out.space_y = Y;
    out.K1 = params.K1;
    out.K2 = params.K2;
    out.norm_x = detail::checked_norm(X, w, tol);
    out.norm_y = detail::checked_norm(Y, w, tol);
    out.phi_x = detail::checked_fundamental(X, params.K1 / out.sigma);
    out.phi_y = detail::checked_fundamental(Y, params.K2 / out.sigma);
    out.value = out.recompose();
    return out;
}

/// Quotient for one kernel; its class degree drives sigma.
inline NFEvaluation nf_witness_value(const SpaceSpec& X, const SpaceSpec& Y, const KernelSpec& t, const NFParams& params,
                                     double tol = 1e-8) {
    t.validate();
    auto out = nf_witness_value(X, Y, Witness::kernel(t), class_degree(t), params, tol);
    out.witness = t;
    return out;
}

struct NFLowerBound {
    NFEvaluation best;
    std::vector<NFEvaluation> members; // in family order
};

/// max of the witness quotient over a finite family inside A(n).
inline NFLowerBound nf_lower_bound(const SpaceSpec& X, const SpaceSpec& Y, double n, const NFParams& params,
                                   const std::vector<KernelSpec>& family, double tol = 1e-8) {
    require(!family.empty(), ErrorKind::InvalidArgument, "empty witness family");
    for (const auto& k : family) {
        k.validate();
        require(class_degree(k) <= n * (1.0 + 1e-12), ErrorKind::InvalidArgument,
                k.label() + " has degree above n = " + SpaceSpec::fmt_number(n));
    }
    NFLowerBound out;
    out.members = parallel_map(family, [&](const KernelSpec& k) {
        auto e = nf_witness_value(X, Y, Witness::kernel(k), n, params, tol);
        e.witness = k;
        return e;
    });
    out.best = out.members.front();
    for (const auto& e : out.members)
        if (e.value > out.best.value) out.best = e;
    return out;
}

/// Witness family per degree: the Fejer kernel and generalized kernels on an (alpha, beta) list.
struct WitnessFamily {
    bool fejer = true;
    std::vector<std::pair<double, double>> generalized;

    [[nodiscard]] std::vector<KernelSpec> members(double n) const {
        std::vector<KernelSpec> out;
        if (fejer) out.push_back(KernelSpec::fejer(n));
        for (const auto& [a, b] : generalized) out.push_back(KernelSpec::generalized(n, a, b));
        return out;
    }
};

} // namespace rilab
