#pragma once

// Randomized cases shared by the property tests and the acceptance run.

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "rilab/nikolskii.hpp"

namespace rilab::props {

inline constexpr int kCases = 100;
inline constexpr double kTol = 1e-10;

struct Case {
    SpaceSpec space;
    SpaceSpec other;
    KernelSpec kernel;
    double scale = 1.0;
    double delta = 0.5;
    std::vector<double> bump_a; // two compactly supported pieces for the triangle inequality
    std::vector<double> bump_b;
};

inline SpaceSpec random_space(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    switch (std::uniform_int_distribution<int>(0, 6)(rng)) {
    case 0: return SpaceSpec::lp(1.0 + 5.0 * u(rng));
    case 1: {
        const double a = 1.0 + u(rng), b = a + 0.5 + 3.0 * u(rng);
        return SpaceSpec::grand(a, b, 0.25 + 1.5 * u(rng), 0.25 + 1.5 * u(rng));
    }
    case 2: return SpaceSpec::zygmund(1.2 + 3.0 * u(rng), 2.0 * u(rng));
    case 3: return SpaceSpec::orlicz(OrliczFunction::power(1.1 + 3.0 * u(rng)));
    case 4: return SpaceSpec::orlicz(OrliczFunction::exponential());
    case 5: return SpaceSpec::lorentz(LorentzPhiSpec::power(1.0 + 4.0 * u(rng)));
    default: return SpaceSpec::lorentz(LorentzPhiSpec::power_log(1.0 + 4.0 * u(rng), 0.5 + u(rng)));
    }
}

inline bool is_lorentz(const SpaceSpec& s) { return std::holds_alternative<LorentzSpec>(s.kind); }

inline const std::vector<Case>& cases() {
    static const std::vector<Case> all = [] {
        std::mt19937_64 rng(20240611);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        std::vector<Case> out;
        for (int i = 0; i < kCases; ++i) {
            Case c;
            c.space = random_space(rng);
            c.other = random_space(rng);
            const double n = std::round(std::exp(std::log(3.0) + u(rng) * std::log(300.0)));
            const int pick = std::uniform_int_distribution<int>(0, 2)(rng);
            if (pick == 2 && !is_lorentz(c.space) && !is_lorentz(c.other))
                c.kernel = KernelSpec::generalized(n, 0.5 + 2.5 * u(rng), 0.5 + 2.0 * u(rng));
            else if (pick == 1)
                c.kernel = KernelSpec::power_of_fejer(n, 2);
            else
                c.kernel = KernelSpec::fejer(n);
            c.scale = std::exp(-4.0 + 8.0 * u(rng)) * (u(rng) < 0.5 ? -1.0 : 1.0);
            c.delta = std::exp(-12.0 * u(rng));
            c.bump_a = {u(rng), 0.2 + u(rng), 2.0 * u(rng)};
            c.bump_b = {u(rng), 0.2 + u(rng), 2.0 * u(rng)};
            out.push_back(c);
        }
        return out;
    }();
    return all;
}

// h * (x(w-x))^k on [0, w], shifted by s
inline CompactFunction bump(const std::vector<double>& prm) {
    const double s = prm[0], w = prm[1], k = 1.0 + prm[2];
    const double h = std::pow(2.0 / w, 2 * k);
    return {[=](double x) {
                const double t = x - s;
                return t <= 0.0 || t >= w ? 0.0 : h * std::pow(t * (w - t), k);
            },
            s, s + w, {}, "bump"};
}

inline CompactFunction sum(const CompactFunction& a, const CompactFunction& b) {
    const double lo = std::min(a.lo, b.lo), hi = std::max(a.hi, b.hi);
    std::vector<double> br;
    for (double x : {a.lo, a.hi, b.lo, b.hi})
        if (x > lo && x < hi) br.push_back(x);
    std::sort(br.begin(), br.end());
    br.erase(std::unique(br.begin(), br.end()), br.end());
    return {[a, b](double x) {
                return (x > a.lo && x < a.hi ? a.f(x) : 0.0) + (x > b.lo && x < b.hi ? b.f(x) : 0.0);
            },
            lo, hi, br, "sum"};
}



inline double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

// each measure returns the quantity its property bounds

inline double homogeneity_error(const Case& c) {
    const auto w = Witness::kernel(c.kernel);
    return rel(space_norm(c.space, w.scaled(c.scale), kTol), std::abs(c.scale) * space_norm(c.space, w, kTol));
}

// ||a + b|| / (||a|| + ||b||) - 1, at most 0 up to rounding
inline double triangle_excess(const Case& c) {
    const auto a = bump(c.bump_a), b = bump(c.bump_b);
    const double na = space_norm(c.space, Witness::compact(a), kTol);
    const double nb = space_norm(c.space, Witness::compact(b), kTol);
    return space_norm(c.space, Witness::compact(sum(a, b)), kTol) / (na + nb) - 1.0;
}

inline double indicator_error(const Case& c) {
    return rel(space_norm(c.space, Witness::indicator(c.delta), kTol), fundamental_function(c.space, c.delta));
}

inline constexpr double kLuxemburgTol = 1e-9;

// |int Phi(|f|/v*) - 1|, empty outside Orlicz-type spaces
inline std::optional<double> luxemburg_residual(const Case& c) {
    std::optional<OrliczFunction> phi;
    if (const auto* o = std::get_if<OrliczSpec>(&c.space.kind)) phi = o->phi;
    else if (const auto* y = std::get_if<ZygmundSpec>(&c.space.kind)) phi = y->orlicz();
    if (!phi) return std::nullopt;
    const auto r = orlicz_luxemburg_norm(Witness::kernel(c.kernel).scaled(c.scale), *phi, kLuxemburgTol);
    return std::abs(r.constraint - 1.0);
}

inline double recompose_error(const Case& c) {
    const auto e = nf_witness_value(c.space, c.other, c.kernel, NFParams{}, 1e-8);
    return std::max(rel(e.recompose(), e.value), rel((e.norm_x / e.phi_x) / (e.norm_y / e.phi_y), e.value));
}

} // namespace rilab::props
