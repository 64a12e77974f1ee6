// Randomized invariants over the space families, fixed seed.

#include <gtest/gtest.h>

#include "property_cases.hpp"

using namespace rilab;
using namespace rilab::props;

TEST(Properties, NormHomogeneity) {
    for (int i = 0; i < kCases; ++i) {
        const auto& c = cases()[i];
        EXPECT_LT(homogeneity_error(c), 1e-8)
            << "case " << i << ": " << c.kernel.label() << " in " << c.space.name << ", c = " << c.scale;
    }
}

TEST(Properties, TriangleInequality) {
    for (int i = 0; i < kCases; ++i)
        EXPECT_LE(triangle_excess(cases()[i]), 1e-8) << "case " << i << " in " << cases()[i].space.name;
}

TEST(Properties, IndicatorMatchesFundamentalFunction) {
    for (int i = 0; i < kCases; ++i) {
        const auto& c = cases()[i];
        EXPECT_LT(indicator_error(c), 1e-6) << "case " << i << " in " << c.space.name << ", delta = " << c.delta;
    }
}

TEST(Properties, LuxemburgConstraintResidual) {
    int checked = 0;
    for (int i = 0; i < kCases; ++i) {
        if (const auto r = luxemburg_residual(cases()[i])) {
            EXPECT_LE(*r, kLuxemburgTol) << "case " << i << " in " << cases()[i].space.name;
            ++checked;
        }
    }
    EXPECT_GT(checked, 20);
}

TEST(Properties, NFEvaluationRecomposes) {
    for (int i = 0; i < kCases; ++i) EXPECT_LT(recompose_error(cases()[i]), 1e-12) << "case " << i;
}

TEST(Properties, TriangleHelperIsASum) {
    const auto a = bump({0.0, 1.0, 0.0}), b = bump({0.5, 1.0, 1.0});
    const auto s = sum(a, b);
    for (double x : {0.1, 0.7, 1.2}) EXPECT_DOUBLE_EQ(s.f(x), (x < 1.0 ? a.f(x) : 0.0) + (x > 0.5 ? b.f(x) : 0.0));
    EXPECT_DOUBLE_EQ(a.f(0.5), 1.0);
}
