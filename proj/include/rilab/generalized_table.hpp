#pragma once

// Tabulated quadrature for integrals  int_0^inf g(|K(y)|) dy  of the unit
// generalized profile K(y) = 2 int_0^1 cos(uy) (1 - u^alpha)^beta du.
//
// K is evaluated as a fixed weighted cosine sum over a graded composite
// Gauss-Legendre rule in u, which is accurate for |y| up to the window.
// The y-rule on [0, window] has panel breaks at the sign changes of K.
// On [window, far] the asymptotic expansion replaces K, and beyond far its
// period mean is integrated with a boundary correction.
// The mismatch between the table and the expansion near the window is
// measured once and charged to the error estimate of every integral.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <vector>

#include "rilab/error.hpp"
#include "rilab/kernels.hpp"
#include "rilab/numerics/quadrature.hpp"
#include "rilab/numerics/roots.hpp"

namespace rilab {

/// g(u) ~ coefficient * u^exponent as u -> 0.
struct PowerLaw {
    double exponent = 1.0;
    double coefficient = 1.0;
};

struct TabulatedIntegral {
    double value = 0.0;
    double abs_error = 0.0;
};

class GeneralizedTable {
public:
    struct Options {
        double window = 64.0 * std::numbers::pi;
        double far_factor = 16.0;
    };

    GeneralizedTable(double alpha, double beta) : GeneralizedTable(alpha, beta, Options{}) {}

    GeneralizedTable(double alpha, double beta, Options opt)
        : alpha_(alpha), beta_(beta), window_(opt.window), far_(opt.window * opt.far_factor),
          asym_(GeneralizedAsymptotics::of(alpha, beta)) {
        require(alpha > 0.0 && beta > 0.0 && std::isfinite(alpha) && std::isfinite(beta), ErrorKind::InvalidArgument,
                "generalized kernel needs alpha > 0 and beta > 0");
        require(opt.window > 10.0 && opt.far_factor >= 1.0, ErrorKind::InvalidArgument, "invalid table window");
        build_u_rule();
        build_y_rule();
    }

    [[nodiscard]] double alpha() const noexcept { return alpha_; }
    [[nodiscard]] double beta() const noexcept { return beta_; }
    [[nodiscard]] double window() const noexcept { return window_; }
    [[nodiscard]] const GeneralizedAsymptotics& asymptotics() const noexcept { return asym_; }

    /// sup |K - K_asym| / envelope over the last half of the window.
    [[nodiscard]] double tail_mismatch() const noexcept { return mismatch_; }

    /// K(y) from the cosine sum inside the window, from the expansion outside.
    [[nodiscard]] double unit_value(double y) const {
        y = std::abs(y);
        return y <= window_ ? cosine_sum(y) : asym_.value(y);
    }

    /// K(0) = 2 B(1/alpha, beta + 1) / alpha.
    [[nodiscard]] double peak() const { return 2.0 * std::beta(1.0 / alpha_, beta_ + 1.0) / alpha_; }

    /// int_0^inf g(|K(y)|) dy for g increasing with g(0) = 0 and g ~ tail near 0.
    template <class G>
    [[nodiscard]] TabulatedIntegral integrate(const G& g, const PowerLaw& tail) const {
        const double e = tail.exponent;
        const double kappa = asym_.slowest_exponent();
        require(e * kappa > 1.0, ErrorKind::DivergentIntegral,
                "generalized kernel tail decays like y^(-" + std::to_string(kappa * e) + ")");
        double inner = 0.0;
        for (std::size_t i = 0; i < y_weight_.size(); ++i) inner += y_weight_[i] * g(k_abs_[i]);
        double outer = 0.0;
        double switch_err = 0.0;
        for (std::size_t i = 0; i < far_weight_.size(); ++i) {
            const double ga = g(far_abs_[i]);
            outer += far_weight_[i] * ga;
            switch_err += far_weight_[i] * (g(far_abs_[i] + mismatch_ * far_env_[i]) - ga);
        }
        const auto beyond = beyond_far(e);
        const double beyond_value = tail.coefficient * beyond.value;
        const double beyond_err = tail.coefficient * beyond.abs_error +
                                  std::abs(beyond_value) * (std::pow(1.0 + mismatch_, e) - 1.0);
        return {inner + outer + beyond_value, switch_err + beyond_err};
    }

private:
    double alpha_;
    double beta_;
    double window_;
    double far_;
    GeneralizedAsymptotics asym_;
    double mismatch_ = 0.0;

    std::vector<double> u_;
    std::vector<double> u_weight_; // 2 w_i (1 - u_i^alpha)^beta
    std::vector<double> y_weight_;
    std::vector<double> k_abs_;
    std::vector<double> far_weight_;
    std::vector<double> far_abs_;
    std::vector<double> far_env_;

    [[nodiscard]] double cosine_sum(double y) const noexcept {
        double s = 0.0;
        for (std::size_t i = 0; i < u_.size(); ++i) s += u_weight_[i] * std::cos(u_[i] * y);
        return s;
    }

    // (1 - (1 - w)^alpha)^beta, accurate for small w = 1 - u
    [[nodiscard]] double profile_near_one(double w) const noexcept {
        return std::exp(beta_ * std::log(-std::expm1(alpha_ * std::log1p(-w))));
    }

    void build_u_rule() {
        const auto rule = quad::gauss_legendre(16);
        // each panel holds at most h * window <= 6 radians of cos(uy)
        const double h = std::min(0.1, 6.0 / window_);
        std::vector<double> grade;
        for (int k = 13; k >= 1; --k) grade.push_back(std::pow(0.1, k));
        auto add_panels = [&](double a, double b, bool from_right) {
            const int pieces = std::max(1, static_cast<int>(std::ceil((b - a) / h)));
            for (int p = 0; p < pieces; ++p) {
                const double lo = a + (b - a) * p / pieces;
                const double hi = a + (b - a) * (p + 1) / pieces;
                for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
                    const double t = 0.5 * (lo + hi) + 0.5 * (hi - lo) * rule.nodes[j];
                    const double w = 0.5 * (hi - lo) * rule.weights[j];
                    // for the right end, t is the distance w = 1 - u
                    const double u = from_right ? 1.0 - t : t;
                    const double prof = from_right ? profile_near_one(t) : generalized_profile(alpha_, beta_, t);
                    u_.push_back(u);
                    u_weight_.push_back(2.0 * w * prof);
                }
            }
        };
        add_panels(0.0, grade.front(), false);
        for (std::size_t k = 0; k + 1 < grade.size(); ++k) add_panels(grade[k], grade[k + 1], false);
        add_panels(0.1, 0.9, false);
        add_panels(0.0, grade.front(), true);
        for (std::size_t k = 0; k + 1 < grade.size(); ++k) add_panels(grade[k], grade[k + 1], true);
    }

    void build_y_rule() {
        const auto rule = quad::gauss_legendre(12);
        const double pi = std::numbers::pi;
        std::vector<double> breaks;
        const double step = pi / 4.0;
        double prev_y = 0.0;
        double prev_k = cosine_sum(0.0);
        const int samples = static_cast<int>(std::ceil(window_ / step));
        for (int i = 1; i <= samples; ++i) {
            const double y = std::min(window_, i * step);
            const double k = cosine_sum(y);
            if (std::signbit(k) != std::signbit(prev_k) && k != 0.0)
                breaks.push_back(roots::illinois([&](double t) { return cosine_sum(t); }, prev_y, y, 1e-13));
            prev_y = y;
            prev_k = k;
        }
        for (double y = 0.0; y < window_; y += pi) breaks.push_back(y);
        breaks.push_back(window_);
        std::sort(breaks.begin(), breaks.end());
        breaks.erase(std::unique(breaks.begin(), breaks.end(),
                                 [](double a, double b) { return std::abs(a - b) < 1e-9; }),
                     breaks.end());

        double mismatch = 0.0;
        for (std::size_t b = 0; b + 1 < breaks.size(); ++b) {
            const double lo = breaks[b];
            const double hi = breaks[b + 1];
            for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
                const double y = 0.5 * (lo + hi) + 0.5 * (hi - lo) * rule.nodes[j];
                const double k = cosine_sum(y);
                y_weight_.push_back(0.5 * (hi - lo) * rule.weights[j]);
                k_abs_.push_back(std::abs(k));
                if (y >= 0.5 * window_) mismatch = std::max(mismatch, std::abs(k - asym_.value(y)) / asym_.envelope(y));
            }
        }
        mismatch_ = mismatch;

        // [window, far]: panels of at most pi/2 with breaks at the zeros of the expansion
        const auto coarse = quad::gauss_legendre(8);
        const double half_pi = 0.5 * pi;
        std::vector<double> far_breaks{window_};
        const double scan = pi / 8.0;
        double prev = asym_.value(window_);
        for (double y = window_ + scan; y < far_ + 0.5 * scan; y += scan) {
            const double hi = std::min(y, far_);
            const double v = asym_.value(hi);
            if (std::signbit(v) != std::signbit(prev) && v != 0.0)
                far_breaks.push_back(roots::illinois([&](double t) { return asym_.value(t); }, hi - scan, hi, 0.0, 1e-13));
            prev = v;
        }
        far_breaks.push_back(far_);
        for (std::size_t b = 0; b + 1 < far_breaks.size(); ++b) {
            const double lo0 = far_breaks[b];
            const double span = far_breaks[b + 1] - lo0;
            if (span <= 0.0) continue;
            const int pieces = std::max(1, static_cast<int>(std::ceil(span / half_pi)));
            const double width = span / pieces;
            for (int p = 0; p < pieces; ++p) {
                const double lo = lo0 + p * width;
                for (std::size_t j = 0; j < coarse.nodes.size(); ++j) {
                    const double y = lo + 0.5 * width * (1.0 + coarse.nodes[j]);
                    far_weight_.push_back(0.5 * width * coarse.weights[j]);
                    far_abs_.push_back(std::abs(asym_.value(y)));
                    far_env_.push_back(asym_.envelope(y));
                }
            }
        }
    }

    // Past far, K_asym(y) = y^-kappa (A(y) + C(y) cos y + S(y) sin y) with A, C, S
    // slowly varying. Writing |K_asym|^e = F(y, theta = y) with F periodic in theta,
    //   int_a^inf F(y, y) dy = int_a^inf Fbar(y) dy + int_a^{a+2pi} (F(a, t) - Fbar(a)) (1 - (t-a)/2pi) dt + O(F(a)/a),
    // Fbar the period mean. The neglected term is charged to the error.
    struct Trig {
        double a; // constant
        double c; // cos coefficient
        double s; // sin coefficient
    };

    // coefficients of y^kappa K_asym(y) at y
    [[nodiscard]] Trig scaled_coefficients(double y, double kappa) const {
        Trig t{0.0, 0.0, 0.0};
        for (const auto& term : asym_.terms) {
            const double mag = term.coefficient * std::exp(-(term.exponent - kappa) * std::log(y));
            if (term.oscillating) {
                const double phase = 0.5 * std::numbers::pi * term.exponent;
                t.c += mag * std::cos(phase);
                t.s += mag * std::sin(phase);
            } else {
                t.a += mag;
            }
        }
        return t;
    }

    // int_0^{2pi} |a + c cos t + s sin t|^e w(t) dt, w(t) = 1 or 1 - t/2pi. Split at the
    // zeros, each piece graded toward its zero ends by t = end + (mid - end) v^2.
    static double trig_power_integral(const Trig& q, double e, bool ramp) {
        static const auto rule = quad::gauss_legendre(24);
        const double two_pi = 2.0 * std::numbers::pi;
        std::vector<double> breaks{0.0, two_pi};
        const double r = std::hypot(q.c, q.s);
        if (r > std::abs(q.a)) {
            const double phi = std::atan2(q.s, q.c);
            const double d = std::acos(-q.a / r);
            for (double z : {phi + d, phi - d}) {
                z = std::fmod(z, two_pi);
                if (z < 0.0) z += two_pi;
                breaks.push_back(z);
            }
        }
        std::sort(breaks.begin(), breaks.end());
        auto f = [&](double t) {
            const double w = ramp ? 1.0 - t / two_pi : 1.0;
            return std::pow(std::abs(q.a + q.c * std::cos(t) + q.s * std::sin(t)), e) * w;
        };
        auto graded = [&](double end, double mid) {
            double sum = 0.0;
            for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
                const double v = 0.5 * (1.0 + rule.nodes[i]);
                const double t = end + (mid - end) * v * v;
                sum += 0.5 * rule.weights[i] * f(t) * 2.0 * v;
            }
            return sum * (mid - end);
        };
        double total = 0.0;
        for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
            const double lo = breaks[k];
            const double hi = breaks[k + 1];
            if (hi - lo < 1e-15) continue;
            const double mid = 0.5 * (lo + hi);
            total += graded(lo, mid) - graded(hi, mid);
        }
        return total;
    }

    [[nodiscard]] TabulatedIntegral beyond_far(double e) const {
        const double kappa = asym_.slowest_exponent();
        const double two_pi = 2.0 * std::numbers::pi;
        const double a = far_;
        const double decay = kappa * e - 1.0;
        // int_a^inf Fbar(y) dy with y = a e^t, scaled by a^-decay
        auto mean = [&](double t) {
            const double y = a * std::exp(t);
            return trig_power_integral(scaled_coefficients(y, kappa), e, false) / two_pi * std::exp(-decay * t);
        };
        const double t_max = std::max(1.0, 650.0 - std::log(a));
        std::vector<double> breaks{0.0};
        for (double t = 0.25; t < t_max; t *= 2.0) breaks.push_back(t);
        breaks.push_back(t_max);
        quad::Options opt;
        opt.rel_tol = 1e-12;
        opt.abs_tol = 1e-300;
        auto body = quad::integrate_panels(mean, std::span<const double>(breaks), opt);
        // past t_max the coefficients are frozen at their limit
        const double rest = mean(t_max) / decay;
        const double scale = std::pow(a, -kappa * e) * a;
        // boundary term at a, phases rotated so the period starts at t = a
        const Trig q = scaled_coefficients(a, kappa);
        const Trig rotated{q.a, q.c * std::cos(a) + q.s * std::sin(a), q.s * std::cos(a) - q.c * std::sin(a)};
        const double mean_a = trig_power_integral(q, e, false) / two_pi;
        const double boundary = trig_power_integral(rotated, e, true) - std::numbers::pi * mean_a;
        const double a_scale = std::pow(a, -kappa * e);
        const double value = scale * (body.value + rest) + a_scale * boundary;
        const double err = scale * body.abs_error + a_scale * std::abs(boundary) * two_pi * kappa * e / a;
        return {value, err};
    }
};

} // namespace rilab
