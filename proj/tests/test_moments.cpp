#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "oracles.hpp"
#include "rilab/moments.hpp"

using namespace rilab;
using std::numbers::pi;

namespace {

Witness fejer(double n) { return Witness::kernel(KernelSpec::fejer(n)); }

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

} // namespace

TEST(LpNorm, FejerExamples) {
    EXPECT_LT(rel(lp_norm(fejer(10), 1.0), pi / 20), 1e-9);
    EXPECT_LT(rel(lp_norm(fejer(10), 2.0), std::sqrt(pi / 120)), 1e-9);
}

TEST(LpNorm, Indicator) {
    EXPECT_DOUBLE_EQ(lp_norm(Witness::indicator(1.0), 7.0), 1.0);
    EXPECT_NEAR(lp_norm(Witness::indicator(0.25, 3.0), 2.0), 3.0 * 0.5, 1e-15);
}

TEST(LpNorm, CompactFunctionAgainstSimpson) {
    CompactFunction f{[](double x) { return x * (1 - x); }, 0.0, 1.0, {}, "x(1-x)"};
    const auto w = Witness::compact(f);
    for (double p : {1.0, 2.5, 6.0}) {
        const long double ref = oracle::simpson(
            [p](long double x) { return std::pow(x * (1 - x), static_cast<long double>(p)); }, 0.0L, 1.0L, 20000);
        EXPECT_LT(rel(lp_norm(w, p), std::pow(static_cast<double>(ref), 1.0 / p)), 1e-10) << p;
    }
}

TEST(LpNorm, Homogeneity) {
    for (double p : {1.0, 1.7, 4.0, 12.0})
        for (double c : {-3.0, 0.01, 250.0})
            EXPECT_LT(rel(lp_norm(fejer(16).scaled(c), p), std::abs(c) * lp_norm(fejer(16), p)), 1e-12);
}

TEST(LpNorm, TranslationInvariant) {
    EXPECT_LT(rel(lp_norm(fejer(8).translated(3.3), 3.0), lp_norm(fejer(8), 3.0)), 1e-14);
}

TEST(LpNorm, DomainChecks) {
    EXPECT_THROW(lp_norm(fejer(4), 0.5), Error);
    EXPECT_THROW(lp_norm(fejer(4), 2.0, Domain::Circle), Error);
    EXPECT_NO_THROW(lp_norm(Witness::kernel(KernelSpec::fejer_discrete(4)), 2.0, Domain::Circle));
}

TEST(LpNorm, DiscreteFejerClosedFormAtTwo) {
    // n^-4 int |sum_{k<n} e^{ikx}|^4 = 2 pi n (2n^2 + 1) / 3 / n^4
    for (int n : {1, 3, 8, 33}) {
        const double expect = std::sqrt(2 * pi * (2.0 * n * n + 1) / (3.0 * n * n * n));
        EXPECT_LT(rel(lp_norm(Witness::kernel(KernelSpec::fejer_discrete(n)), 2.0), expect), 1e-9) << n;
    }
}

TEST(LpNorm, GeneralizedParseval) {
    // int K^2 = 2 pi int_{-1}^{1} (1 - |u|^a)^{2b} du
    for (auto [a, b] : {std::pair{1.0, 1.0}, {2.0, 1.0}, {0.5, 2.0}, {3.0, 0.5}, {1.31, 0.43}}) {
        const double n = 32;
        const double expect = std::sqrt(n * 4 * pi * std::beta(1.0 / a, 2 * b + 1) / a);
        EXPECT_LT(rel(lp_norm(Witness::kernel(KernelSpec::generalized(n, a, b)), 2.0), expect), 1e-7) << a << "," << b;
    }
}

TEST(LpNorm, GeneralizedOneOneIsFejer) {
    const double n = 20;
    for (double p : {1.0, 2.0, 3.5}) {
        const double g = lp_norm(Witness::kernel(KernelSpec::generalized(n, 1, 1)), p);
        EXPECT_LT(rel(g / (4 * n), lp_norm(fejer(n), p)), 1e-7) << p;
    }
}

TEST(MomentProfile, IndicatorAllOnes) {
    const auto grid = geometric_p_grid(16.0);
    const auto prof = moment_profile(Witness::indicator(1.0), grid);
    for (double v : prof.values) EXPECT_DOUBLE_EQ(v, 1.0);
    ASSERT_TRUE(prof.sup_norm.has_value());
    EXPECT_DOUBLE_EQ(*prof.sup_norm, 1.0);
}

TEST(MomentProfile, ScaledProfileIndependentOfN) {
    const std::vector<double> grid{1.0, 1.5, 2.0, 3.0, 8.0, 30.0};
    const auto base = moment_profile(fejer(4), grid);
    for (double n : {16.0, 64.0}) {
        const auto prof = moment_profile(fejer(n), grid);
        for (std::size_t i = 0; i < grid.size(); ++i)
            EXPECT_LT(rel(prof.values[i] * std::pow(n, 1 / grid[i]), base.values[i] * std::pow(4.0, 1 / grid[i])), 1e-8)
                << "n=" << n << " p=" << grid[i];
    }
}

TEST(MomentProfile, GridValidation) {
    const std::vector<double> bad{1.0, 3.0, 2.0};
    EXPECT_THROW(moment_profile(fejer(4), bad), Error);
    const std::vector<double> low{0.5, 2.0};
    EXPECT_THROW(moment_profile(fejer(4), low), Error);
    const auto g = geometric_p_grid(64.0);
    EXPECT_DOUBLE_EQ(g.front(), 1.0);
    EXPECT_DOUBLE_EQ(g.back(), 64.0);
    EXPECT_NEAR(g[1], 1.25, 1e-15);
}

TEST(MomentProfile, CircleLyapunovMonotone) {
    const auto grid = geometric_p_grid(32.0);
    for (int n : {2, 7, 30}) {
        const auto prof = moment_profile(Witness::kernel(KernelSpec::fejer_discrete(n)), grid);
        double prev = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double mean = prof.values[i] / std::pow(2 * pi, 1 / grid[i]);
            EXPECT_GE(mean, prev * (1 - 1e-12)) << "n=" << n << " p=" << grid[i];
            prev = mean;
        }
        EXPECT_LE(prev, 1.0);
    }
}

TEST(MomentProfile, BoundedBySupTimesSupport) {
    CompactFunction f{[](double x) { return std::sin(x); }, 0.0, pi, {}, "sin"};
    const auto w = Witness::compact(f);
    const auto prof = moment_profile(w, geometric_p_grid(20.0));
    for (std::size_t i = 0; i < prof.values.size(); ++i)
        EXPECT_LE(prof.values[i], *prof.sup_norm * std::pow(pi, 1 / prof.p_grid[i]) * (1 + 1e-12));
}

TEST(SupNorm, Examples) {
    EXPECT_DOUBLE_EQ(sup_norm(fejer(3)), 0.25);
    EXPECT_DOUBLE_EQ(sup_norm(fejer(1000)), 0.25);
    EXPECT_DOUBLE_EQ(sup_norm(Witness::kernel(KernelSpec::fejer_discrete(9))), 1.0);
    EXPECT_DOUBLE_EQ(sup_norm(Witness::kernel(KernelSpec::power_of_fejer(5, 2))), 0.0625);
    CompactFunction f{[](double x) { return x * (1 - x); }, 0.0, 1.0, {}, "x(1-x)"};
    EXPECT_NEAR(sup_norm(Witness::compact(f)), 0.25, 1e-14);
}

TEST(SincPowerIntegral, ClosedForms) {
    EXPECT_LT(rel(sinc_power_integral(2.0), pi), 1e-8);
    EXPECT_LT(rel(sinc_power_integral(4.0), 2 * pi / 3), 1e-8);
    // int (sin y / y)^6 = 11 pi / 20
    EXPECT_LT(rel(sinc_power_integral(6.0), 11 * pi / 20), 1e-8);
}

TEST(SincPowerIntegral, AgreesWithSimpsonOracle) {
    for (double s : {1.5, 3.0, 7.3}) EXPECT_LT(rel(sinc_power_integral(s), oracle::sinc_power(s)), 1e-6) << s;
}

TEST(SincPowerIntegral, Laplace) {
    EXPECT_LT(std::abs(sinc_power_integral(100.0) / sinc_power_laplace(100.0) - 1), 0.03);
    EXPECT_LT(std::abs(sinc_power_integral(200.0) / sinc_power_laplace(200.0) - 1), 0.05);
    EXPECT_NEAR(sinc_power_laplace(100.0), 0.434161, 1e-6);
}

TEST(SincPowerIntegral, Domain) {
    EXPECT_THROW(sinc_power_integral(1.0), Error);
    EXPECT_NO_THROW(sinc_power_integral(1.02));
}

TEST(FejerClosedForm, Examples) {
    EXPECT_LT(rel(fejer_moment_closed_form(10, 1), pi / 20), 1e-9);
    EXPECT_LT(rel(fejer_moment_closed_form(10, 2), std::sqrt(pi / 120)), 1e-9);
}

TEST(FejerClosedForm, AgreesWithQuadrature) {
    for (double n : {4.0, 64.0})
        for (double p : {1.0, 1.5, 2.0, 3.0, 5.0})
            EXPECT_LT(rel(lp_norm(fejer(n), p), fejer_moment_closed_form(n, p)), 1e-6) << "n=" << n << " p=" << p;
}

TEST(FejerClosedForm, ScaledConstantInN) {
    for (double p : {1.0, 2.5, 9.0}) {
        const double ref = fejer_moment_closed_form(4, p) * std::pow(4.0, 1 / p);
        for (double n : {16.0, 64.0, 256.0})
            EXPECT_LT(rel(fejer_moment_closed_form(n, p) * std::pow(n, 1 / p), ref), 1e-8);
    }
}

TEST(FejerClosedForm, ScaledProfileSpreadAboveNinth) {
    const auto grid = geometric_p_grid(64.0);
    double lo = 1e300, hi = 0;
    for (double p : grid) {
        const double v = fejer_moment_closed_form(32, p) * std::pow(32.0, 1 / p);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    EXPECT_GE(lo / hi, 1.0 / 9.0);
}
