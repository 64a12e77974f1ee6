#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "rilab/generalized_table.hpp"
#include "rilab/kernels.hpp"

using namespace rilab;
using std::numbers::pi;

TEST(FejerContinuous, PeakIsQuarter) { EXPECT_DOUBLE_EQ(eval_fejer_continuous(10, 0.0), 0.25); }

TEST(FejerContinuous, VanishesAtFirstZero) { EXPECT_NEAR(eval_fejer_continuous(10, 2 * pi / 10), 0.0, 1e-30); }

TEST(FejerContinuous, DirectValue) {
    const double expect = std::sin(2.0) * std::sin(2.0) / 16.0; // 0.0516764
    EXPECT_NEAR(eval_fejer_continuous(4, 1.0), expect, 1e-15);
}

TEST(FejerContinuous, EvenAndScaled) {
    for (double x : {0.1, 0.7, 3.0}) {
        EXPECT_DOUBLE_EQ(eval_fejer_continuous(7, x), eval_fejer_continuous(7, -x));
        EXPECT_NEAR(eval_fejer_continuous(7, x), static_cast<double>(oracle::fejer_unit(7 * x)), 1e-15);
    }
}

TEST(FejerDiscrete, Values) {
    EXPECT_DOUBLE_EQ(eval_fejer_discrete(6, 0.0), 1.0);
    EXPECT_NEAR(eval_fejer_discrete(2, pi), 0.0, 1e-30);
    EXPECT_NEAR(eval_fejer_discrete(3, pi / 2), 1.0 / 9.0, 1e-15);
}

TEST(FejerDiscrete, Periodic) {
    for (double x : {0.3, 1.9, -2.5})
        EXPECT_NEAR(eval_fejer_discrete(5, x), eval_fejer_discrete(5, x + 2 * pi), 1e-13);
}

TEST(FejerDiscrete, MatchesCesaroSum) {
    // n^-2 |sum_{k<n} e^{ikx}|^2
    for (double x : {0.2, 1.0, 2.7}) {
        const int n = 7;
        double re = 0, im = 0;
        for (int k = 0; k < n; ++k) {
            re += std::cos(k * x);
            im += std::sin(k * x);
        }
        EXPECT_NEAR(eval_fejer_discrete(n, x), (re * re + im * im) / (n * n), 1e-14);
    }
}

TEST(Generalized, PeakValues) {
    EXPECT_NEAR(eval_generalized(3, 2, 1, 0.0), 4.0, 1e-12);
    EXPECT_NEAR(eval_generalized(5, 1, 1, 0.0), 5.0, 1e-12);
    EXPECT_NEAR(kernel_peak(KernelSpec::generalized(3, 2, 1)), 4.0, 1e-12);
}

TEST(Generalized, SymbolicValueAtPi) {
    EXPECT_NEAR(eval_generalized(1, 2, 1, pi), 4.0 / (pi * pi), 1e-12);
    EXPECT_NEAR(eval_generalized(1, 2, 1, pi), 0.405285, 1e-6);
}

TEST(Generalized, AlphaBetaOneIsScaledFejer) {
    for (double n : {2.0, 9.0})
        for (double x : {0.0, 0.13, 1.1, 4.0})
            EXPECT_NEAR(eval_generalized(n, 1, 1, x), 4 * n * eval_fejer_continuous(n, x), 1e-11);
}

TEST(Generalized, AgreesWithSimpsonOracle) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> ua(0.3, 4.0);
    std::uniform_real_distribution<double> ub(0.4, 3.0);
    std::uniform_real_distribution<double> uy(0.0, 40.0);
    for (int i = 0; i < 12; ++i) {
        const double a = ua(rng), b = ub(rng), y = uy(rng);
        EXPECT_NEAR(eval_generalized_unit(a, b, y), oracle::generalized_unit(a, b, y, 200000), 2e-9)
            << "alpha=" << a << " beta=" << b << " y=" << y;
    }
}

TEST(Generalized, RejectsBadParameters) {
    EXPECT_THROW(eval_generalized(3, 0.0, 1, 0.1), Error);
    EXPECT_THROW(KernelSpec::generalized(3, 1, -1).validate(), Error);
    EXPECT_THROW(KernelSpec::fejer(0.5).validate(), Error);
}

TEST(GeneralizedAsymptotics, MatchesQuadratureAtLargeArgument) {
    for (auto [a, b] : {std::pair{2.0, 1.0}, {0.5, 2.0}, {3.0, 0.5}, {1.31, 0.43}}) {
        const auto as = GeneralizedAsymptotics::of(a, b);
        for (double y : {150.0, 400.0, 1000.0}) {
            const double direct = eval_generalized_unit(a, b, y);
            EXPECT_NEAR(as.value(y), direct, 1e-9 * as.envelope(y)) << a << "," << b << " y=" << y;
        }
    }
    // large beta: the series is slow, but fine past the table window
    const auto as = GeneralizedAsymptotics::of(8, 8);
    EXPECT_NEAR(as.value(400), eval_generalized_unit(8, 8, 400), 1e-4 * as.envelope(400));
}

TEST(GeneralizedTable, AgreesWithDirectEvaluation) {
    for (auto [a, b] : {std::pair{1.0, 1.0}, {2.0, 1.0}, {0.5, 2.0}, {0.25, 0.25}}) {
        GeneralizedTable t(a, b);
        for (double y : {0.0, 0.3, 5.0, 17.3, 120.0, 199.0})
            EXPECT_NEAR(t.unit_value(y), eval_generalized_unit(a, b, y), 1e-9) << a << "," << b << " y=" << y;
    }
}

TEST(Power, Values) {
    EXPECT_DOUBLE_EQ(eval_power(10, 2, 0.0), 0.0625);
    for (double x : {0.0, 0.2, 1.7}) EXPECT_DOUBLE_EQ(eval_power(10, 1, x), eval_fejer_continuous(10, x));
    const double d = std::sin(2.0) * std::sin(2.0) / 16.0;
    EXPECT_NEAR(eval_power(4, 3, 1.0), d * d * d, 1e-18);
}

TEST(ClassDegree, Examples) {
    EXPECT_EQ(class_degree(KernelSpec::fejer(16)), 16);
    EXPECT_EQ(class_degree(KernelSpec::power_of_fejer(16, 3)), 48);
    EXPECT_EQ(class_degree(KernelSpec::generalized(7, 2, 1)), 7);
}

TEST(Envelope, Values) {
    EXPECT_DOUBLE_EQ(envelope_bound(10, 0.0), 0.25);
    EXPECT_DOUBLE_EQ(envelope_bound(10, 1.0), 0.01);
}

TEST(Envelope, DominatesKernel) {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> un(1.0, 500.0);
    std::uniform_real_distribution<double> ux(-20.0, 20.0);
    for (int i = 0; i < 10000; ++i) {
        const double n = un(rng), x = ux(rng);
        ASSERT_GE(envelope_bound(n, x), eval_fejer_continuous(n, x)) << "n=" << n << " x=" << x;
    }
}

TEST(KernelSpec, Labels) {
    EXPECT_EQ(KernelSpec::fejer(10).label(), "fejer(10)");
    EXPECT_EQ(KernelSpec::generalized(256, 1.5, 0.25).label(), "generalized(256,1.5,0.25)");
    EXPECT_EQ(KernelSpec::power_of_fejer(8, 3).label(), "fejer-power(8,3)");
    EXPECT_EQ(KernelSpec::fejer_discrete(8).label(), "fejer-discrete(8)");
}
