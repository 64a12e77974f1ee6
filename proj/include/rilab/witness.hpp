#pragma once

// A witness is the function whose norms the lab computes: a kernel from
// kernels.hpp, an indicator described by its measure, or a compactly
// supported callable, times a constant and shifted.
//
// Every r.i. norm here reduces to one of three primitives:
//   integrate_transform  int g(|w(x)|) dx   (L_p, Orlicz, Zygmund)
//   distribution         m{ |w| > lambda }  (Lorentz)
//   sup                  sup |w|

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <numbers>
#include <string>
#include <variant>
#include <vector>

#include "rilab/distribution.hpp"
#include "rilab/error.hpp"
#include "rilab/generalized_table.hpp"
#include "rilab/kernels.hpp"
#include "rilab/numerics/quadrature.hpp"
#include "rilab/numerics/roots.hpp"

namespace rilab {

struct Indicator {
    double measure = 1.0;
    double height = 1.0;
};

struct CompactFunction {
    std::function<double(double)> f;
    double lo = 0.0;
    double hi = 1.0;
    std::vector<double> breaks; // interior points where f is not smooth
    std::string name = "f";
};

struct Integral {
    double value = 0.0;
    double abs_error = 0.0;
};

class Witness {
public:
    static Witness kernel(const KernelSpec& spec) {
        spec.validate();
        Witness w;
        w.shape_ = spec;
        w.domain_ = spec.domain();
        if (spec.family == KernelFamily::Generalized)
            w.table_ = std::make_shared<const GeneralizedTable>(spec.alpha, spec.beta);
        return w;
    }

    /// Generalized kernel sharing an already built profile table.
    static Witness generalized(double n, std::shared_ptr<const GeneralizedTable> table) {
        require(table != nullptr, ErrorKind::InvalidArgument, "missing generalized table");
        auto spec = KernelSpec::generalized(n, table->alpha(), table->beta());
        spec.validate();
        Witness w;
        w.shape_ = spec;
        w.domain_ = Domain::RealLine;
        w.table_ = std::move(table);
        return w;
    }

    static Witness indicator(double measure, double height = 1.0, Domain domain = Domain::RealLine) {
        require(measure > 0.0 && std::isfinite(measure), ErrorKind::InvalidArgument, "indicator needs a positive measure");
        require(domain == Domain::RealLine || measure <= 2.0 * std::numbers::pi, ErrorKind::InvalidArgument,
                "indicator on the circle cannot exceed measure 2 pi");
        Witness w;
        w.shape_ = Indicator{measure, height};
        w.domain_ = domain;
        return w;
    }

    static Witness compact(CompactFunction f, Domain domain = Domain::RealLine) {
        require(static_cast<bool>(f.f) && f.lo < f.hi, ErrorKind::InvalidArgument, "compact function needs lo < hi");
        if (domain == Domain::Circle)
            require(f.lo >= -std::numbers::pi && f.hi <= std::numbers::pi, ErrorKind::InvalidArgument,
                    "compact function on the circle must live in [-pi, pi]");
        Witness w;
        w.shape_ = std::move(f);
        w.domain_ = domain;
        return w;
    }

    [[nodiscard]] Witness scaled(double c) const {
        require(std::isfinite(c), ErrorKind::InvalidArgument, "scale must be finite");
        Witness w = *this;
        w.scale_ *= c;
        return w;
    }

    [[nodiscard]] Witness translated(double s) const {
        Witness w = *this;
        w.shift_ += s;
        return w;
    }

    [[nodiscard]] Domain domain() const noexcept { return domain_; }
    [[nodiscard]] double scale() const noexcept { return scale_; }
    [[nodiscard]] double shift() const noexcept { return shift_; }
    [[nodiscard]] const KernelSpec* kernel_spec() const noexcept { return std::get_if<KernelSpec>(&shape_); }
    [[nodiscard]] const Indicator* indicator_shape() const noexcept { return std::get_if<Indicator>(&shape_); }
    [[nodiscard]] const std::shared_ptr<const GeneralizedTable>& table() const noexcept { return table_; }

    [[nodiscard]] std::string label() const {
        std::string base;
        if (auto k = kernel_spec()) base = k->label();
        else if (auto i = indicator_shape()) base = "1_{m=" + compact_number(i->measure) + "}";
        else base = std::get<CompactFunction>(shape_).name;
        if (scale_ != 1.0) base = compact_number(scale_) + "*" + base;
        return base;
    }

    /// Pointwise value; indicators are placed on [0, measure).
    [[nodiscard]] double operator()(double x) const {
        x -= shift_;
        return scale_ * std::visit([&](const auto& s) { return raw(s, x); }, shape_);
    }

    /// sup |w|.
    [[nodiscard]] double sup() const {
        const double c = std::abs(scale_);
        return std::visit([&](const auto& s) { return c * raw_sup(s); }, shape_);
    }

    /// Measure of {w != 0}; infinite for kernels on the line.
    [[nodiscard]] double support_measure() const {
        if (scale_ == 0.0) return 0.0;
        if (auto i = indicator_shape()) return i->measure;
        if (auto f = std::get_if<CompactFunction>(&shape_)) return f->hi - f->lo;
        return domain_ == Domain::Circle ? 2.0 * std::numbers::pi : std::numeric_limits<double>::infinity();
    }

    /// int g(|w(x)|) dx over the domain. g must be nondecreasing with g(0) = 0 and
    /// behave like tail.coefficient * u^tail.exponent near u = 0 (used beyond the
    /// explicitly integrated part of kernels on the line). Throws QuadratureFailure
    /// when the estimated relative error exceeds rel_tol.
    template <class G>
    [[nodiscard]] Integral integrate_transform(const G& g, const PowerLaw& tail, double rel_tol = 1e-9) const {
        require(rel_tol > 0.0, ErrorKind::InvalidArgument, "tolerance must be positive");
        const double c = std::abs(scale_);
        if (c == 0.0) return {0.0, 0.0};
        Integral r = std::visit([&](const auto& s) { return transform(s, g, tail, c, rel_tol); }, shape_);
        if (!(r.abs_error <= rel_tol * std::abs(r.value) + 1e-300))
            throw Error(ErrorKind::QuadratureFailure, "integral of " + label() + " has estimated error " +
                                                          std::to_string(r.abs_error) + " for value " +
                                                          std::to_string(r.value));
        return r;
    }

    /// m{ x : |w(x)| > lambda }. For Fejer kernels on the line, unit-profile levels below
    /// `asymptotic_below` use the asymptotic form of the sinc distribution.
    [[nodiscard]] double distribution(double lambda, double asymptotic_below = sinc_distribution_switch) const {
        require(lambda > 0.0, ErrorKind::InvalidArgument, "distribution level must be positive");
        const double c = std::abs(scale_);
        if (c == 0.0) return 0.0;
        return std::visit([&](const auto& s) { return level_measure(s, lambda / c, asymptotic_below); }, shape_);
    }

    /// int_0^sup h(m{|w| > lambda}) d lambda for continuous h with h(0) = 0.
    template <class H>
    [[nodiscard]] double level_integral(const H& h, double rel_tol = 1e-8) const {
        const double top = sup();
        require(top > 0.0, ErrorKind::InvalidArgument, "level integral of the zero function");
        const double c = std::abs(scale_);
        if (auto i = indicator_shape()) return top * h(i->measure);
        if (auto k = kernel_spec()) {
            if (k->family == KernelFamily::Generalized)
                throw Error(ErrorKind::Unsupported, "distribution function of generalized kernels is not implemented");
            if (k->family != KernelFamily::FejerDiscrete) {
                // lambda = c mu^m on the unit profile
                const int m = k->family == KernelFamily::Power ? k->power : 1;
                const double n = k->degree;
                return c * m * sinc_level_integral([&](double g) { return h(g / n); }, m, rel_tol);
            }
        }
        // generic path: lambda = top v^2
        auto integrand = [&](double v) { return v <= 0.0 ? 0.0 : 2.0 * top * v * h(distribution(top * v * v)); };
        std::vector<double> breaks{0.0};
        for (double b = 1.0 / 1024.0; b < 1.0; b *= 2.0) breaks.push_back(b);
        breaks.push_back(1.0);
        quad::Options opt;
        opt.rel_tol = rel_tol;
        opt.abs_tol = 1e-300;
        opt.max_subdivisions = 4000;
        const auto r = quad::integrate_panels(integrand, std::span<const double>(breaks), opt);
        if (!r.converged && r.abs_error > 100.0 * rel_tol * std::abs(r.value))
            throw Error(ErrorKind::QuadratureFailure, "level integral of " + label() + " did not converge");
        return r.value;
    }

private:
    std::variant<KernelSpec, Indicator, CompactFunction> shape_;
    std::shared_ptr<const GeneralizedTable> table_;
    Domain domain_ = Domain::RealLine;
    double scale_ = 1.0;
    double shift_ = 0.0;

    static double fold(double x) {
        constexpr double two_pi = 2.0 * std::numbers::pi;
        return x - two_pi * std::round(x / two_pi);
    }

    // ---- pointwise ----
    double raw(const KernelSpec& k, double x) const {
        if (k.family == KernelFamily::Generalized) return k.degree * table_->unit_value(k.degree * x);
        return evaluate(k, x);
    }
    double raw(const Indicator& i, double x) const {
        if (domain_ == Domain::Circle) x = fold(x + std::numbers::pi) + std::numbers::pi;
        return (x >= 0.0 && x < i.measure) ? i.height : 0.0;
    }
    double raw(const CompactFunction& f, double x) const {
        if (domain_ == Domain::Circle) x = fold(x);
        return (x >= f.lo && x <= f.hi) ? f.f(x) : 0.0;
    }

    // ---- supremum ----
    double raw_sup(const KernelSpec& k) const {
        if (k.family == KernelFamily::Generalized) return k.degree * table_->peak();
        return kernel_peak(k);
    }
    static double raw_sup(const Indicator& i) { return std::abs(i.height); }
    static double raw_sup(const CompactFunction& f) {
        constexpr int samples = 4096;
        const double h = (f.hi - f.lo) / samples;
        double best = -1.0;
        int arg = 0;
        for (int i = 0; i <= samples; ++i) {
            const double v = std::abs(f.f(f.lo + i * h));
            if (v > best) best = v, arg = i;
        }
        const double lo = f.lo + std::max(0, arg - 1) * h;
        const double hi = f.lo + std::min(samples, arg + 1) * h;
        const auto r = roots::golden_max([&](double x) { return std::abs(f.f(x)); }, lo, hi, 1e-14 * (f.hi - f.lo));
        return std::max(best, r.value);
    }

    // ---- transforms ----
    template <class G>
    Integral transform(const Indicator& i, const G& g, const PowerLaw&, double c, double) const {
        return {i.measure * g(c * std::abs(i.height)), 0.0};
    }

    template <class G>
    Integral transform(const CompactFunction& f, const G& g, const PowerLaw&, double c, double rel_tol) const {
        std::vector<double> breaks{f.lo};
        for (double b : f.breaks)
            if (b > f.lo && b < f.hi) breaks.push_back(b);
        breaks.push_back(f.hi);
        std::sort(breaks.begin(), breaks.end());
        quad::Options opt;
        opt.rel_tol = 0.1 * rel_tol;
        opt.abs_tol = 1e-300;
        // translation is measure preserving, so the integral is taken in the unshifted frame
        auto r = quad::integrate_panels([&](double x) { return g(c * std::abs(f.f(x))); }, std::span<const double>(breaks),
                                        opt);
        return {r.value, r.abs_error};
    }

    template <class G>
    Integral transform(const KernelSpec& k, const G& g, const PowerLaw& tail, double c, double rel_tol) const {
        switch (k.family) {
        case KernelFamily::FejerContinuous: return fejer_power_transform(k.degree, 1, g, tail, c, rel_tol);
        case KernelFamily::Power: return fejer_power_transform(k.degree, k.power, g, tail, c, rel_tol);
        case KernelFamily::FejerDiscrete: return discrete_transform(static_cast<int>(k.degree), g, c, rel_tol);
        case KernelFamily::Generalized: {
            const double n = k.degree;
            const double a = c * n;
            const auto r = table_->integrate([&](double u) { return g(a * u); },
                                             PowerLaw{tail.exponent, tail.coefficient * std::pow(a, tail.exponent)});
            return {2.0 * r.value / n, 2.0 * r.abs_error / n};
        }
        }
        return {};
    }

    // int_R g(c F(nx)^m) dx = (2/n) int_0^inf g(c F(y)^m) dy, over zero-aligned cells
    // [2 pi j, 2 pi (j+1)] up to 2 pi K, then the power-law tail summed by
    // Euler-Maclaurin in the cell index. K doubles until the power law is accurate there.
    template <class G>
    static Integral fejer_power_transform(double n, int m, const G& g, const PowerLaw& tail, double c,
                                          double rel_tol) {
        const double pi = std::numbers::pi;
        const double e = tail.exponent;
        auto integrand = [&](double y) {
            const double f = fejer_unit_profile(y);
            return g(c * std::pow(f, m));
        };
        quad::Options opt;
        opt.rel_tol = 0.05 * rel_tol;
        opt.abs_tol = 1e-300;
        opt.max_subdivisions = 200000;

        int cells = std::clamp(static_cast<int>(std::ceil(2.0 * m * e)), 16, 4096);
        std::vector<double> breaks;
        for (int j = 0; j <= cells; ++j) breaks.push_back(2.0 * pi * j);
        auto head = quad::integrate_panels(integrand, std::span<const double>(breaks), opt);
        double value = head.value;
        double err = head.abs_error;
        for (int guard = 0; guard < 16; ++guard) {
            const double x0 = 2.0 * pi * cells;
            const double u0 = c * std::pow(x0, -2.0 * m); // largest tail argument
            const double law = tail.coefficient * std::pow(u0, e);
            const double deviation = law > 0.0 ? std::abs(g(u0) / law - 1.0) : 1.0;
            // F(y)^(m e) = |sin(y/2)|^(2 m e) / y^(2 m e), and sin(y/2) is 2 pi antiperiodic
            const double se = 2.0 * m * e;
            quad::Options topt;
            topt.rel_tol = 1e-12;
            topt.abs_tol = 1e-300;
            const double t = tail.coefficient * std::pow(c, e) *
                             quad::periodic_power_tail(
                                 [se](double u) { return std::pow(std::abs(std::sin(0.5 * u)), se); }, 2.0 * pi, x0,
                                 se, topt);
            const double tail_err = deviation * t;
            if (tail_err <= 0.1 * rel_tol * std::abs(value + t) || cells >= (1 << 20)) {
                value += t;
                err += tail_err;
                break;
            }
            // extend the explicit part by another block of cells
            std::vector<double> more;
            for (int j = cells; j <= 2 * cells; ++j) more.push_back(2.0 * pi * j);
            auto extra = quad::integrate_panels(integrand, std::span<const double>(more), opt);
            value += extra.value;
            err += extra.abs_error;
            cells *= 2;
        }
        return {2.0 * value / n, 2.0 * err / n};
    }

    template <class G>
    static Integral discrete_transform(int n, const G& g, double c, double rel_tol) {
        const double pi = std::numbers::pi;
        std::vector<double> breaks{0.0};
        for (int k = 1; 2 * k <= n; ++k) breaks.push_back(2.0 * pi * k / n);
        if (breaks.back() < pi) breaks.push_back(pi);
        quad::Options opt;
        opt.rel_tol = 0.1 * rel_tol;
        opt.abs_tol = 1e-300;
        opt.max_subdivisions = 200000;
        auto r = quad::integrate_panels([&](double x) { return g(c * eval_fejer_discrete(n, x)); },
                                        std::span<const double>(breaks), opt);
        return {2.0 * r.value, 2.0 * r.abs_error};
    }

    // ---- level sets (level already divided by |scale|) ----
    double level_measure(const Indicator& i, double level, double) const {
        return level < std::abs(i.height) ? i.measure : 0.0;
    }

    static double level_measure(const CompactFunction& f, double level, double) {
        // sampled sign changes of |f| - level, refined by bisection
        constexpr int samples = 8192;
        const double h = (f.hi - f.lo) / samples;
        auto excess = [&](double x) { return std::abs(f.f(x)) - level; };
        double total = 0.0;
        double prev_x = f.lo;
        double prev = excess(prev_x);
        double enter = prev > 0.0 ? f.lo : 0.0;
        for (int i = 1; i <= samples; ++i) {
            const double x = f.lo + i * h;
            const double v = excess(x);
            if ((prev > 0.0) != (v > 0.0)) {
                const double r = roots::bisect(excess, prev_x, x, 0.0, 1e-15);
                if (v > 0.0) enter = r;
                else total += r - enter;
            }
            prev_x = x;
            prev = v;
        }
        if (prev > 0.0) total += f.hi - enter;
        return total;
    }

    double level_measure(const KernelSpec& k, double level, double asymptotic_below) const {
        switch (k.family) {
        case KernelFamily::FejerContinuous:
            return level >= 0.25 ? 0.0 : sinc_distribution(level, asymptotic_below) / k.degree;
        case KernelFamily::Power: {
            const double mu = std::pow(level, 1.0 / k.power);
            return mu >= 0.25 ? 0.0 : sinc_distribution(mu, asymptotic_below) / k.degree;
        }
        case KernelFamily::FejerDiscrete: return discrete_level_measure(static_cast<int>(k.degree), level);
        case KernelFamily::Generalized:
            throw Error(ErrorKind::Unsupported, "distribution function of generalized kernels is not implemented");
        }
        return 0.0;
    }

    // arches of the discrete kernel between its zeros 2 pi k / n on [0, pi]
    static double discrete_level_measure(int n, double level) {
        if (level >= 1.0) return 0.0;
        const double pi = std::numbers::pi;
        if (n == 1) return 2.0 * pi;
        auto excess = [&](double x) { return eval_fejer_discrete(n, x) - level; };
        std::vector<double> zeros{0.0};
        for (int k = 1; 2 * k <= n; ++k) zeros.push_back(2.0 * pi * k / n);
        if (zeros.back() < pi) zeros.push_back(pi);
        double total = roots::illinois(excess, 0.0, zeros[1], 0.0, 1e-15);
        for (std::size_t a = 1; a + 1 < zeros.size(); ++a) {
            const double lo = zeros[a];
            const double hi = zeros[a + 1];
            const auto top = roots::golden_max([&](double x) { return eval_fejer_discrete(n, x); }, lo, hi,
                                               1e-13 * (hi - lo));
            if (top.value <= level) continue;
            const double left = roots::illinois(excess, lo, top.x, 0.0, 1e-15);
            const double right = excess(hi) > 0.0 ? hi : roots::illinois(excess, top.x, hi, 0.0, 1e-15);
            total += right - left;
        }
        return 2.0 * total;
    }
};

} // namespace rilab
