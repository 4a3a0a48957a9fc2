#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "thermalnoon/analytic.hpp"
#include "thermalnoon/errors.hpp"
#include "thermalnoon/geometry.hpp"
#include "thermalnoon/pathsum.hpp"

using namespace thermalnoon;

namespace {

constexpr double pi = std::numbers::pi;

Rational ratio(long long p, long long q) { return Rational(BigInt(p), BigInt(q)); }

double relative_gap(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST(Exact, FactorialAndBinomial) {
    EXPECT_EQ(factorial_exact(0), 1);
    EXPECT_EQ(factorial_exact(10), 3628800);
    EXPECT_EQ(factorial_exact(25), BigInt("15511210043330985984000000"));
    EXPECT_EQ(binomial_exact(10, 5), 252);
    EXPECT_EQ(binomial_exact(4, 7), 0);
}

TEST(Setup1, Examples) {
    EXPECT_DOUBLE_EQ(setup1_g(2, 0.0), 8.0);
    EXPECT_NEAR(setup1_g(4, pi / 2), 48.0, 1e-12);
    EXPECT_DOUBLE_EQ(setup1_g(4, 0.0), 64.0);
    EXPECT_THROW(setup1_g(3, 0.0), InvalidArgument);
    EXPECT_THROW(setup1_g(0, 0.0), InvalidArgument);
    EXPECT_THROW(setup1_visibility(5), InvalidArgument);
}

TEST(Setup1, VisibilityTable) {
    EXPECT_EQ(setup1_visibility_exact(2), ratio(1, 3));
    EXPECT_EQ(setup1_visibility_exact(4), ratio(1, 7));
    EXPECT_EQ(setup1_visibility_exact(6), ratio(1, 21));
    EXPECT_EQ(setup1_visibility_exact(8), ratio(576, 40896));
    EXPECT_EQ(setup1_visibility_exact(10), ratio(14400, 3643200));
    EXPECT_NEAR(setup1_visibility(2), 0.33, 0.005);
    EXPECT_NEAR(setup1_visibility(4), 0.1429, 0.00005);
    EXPECT_NEAR(setup1_visibility(8), 0.0141, 0.00005);
    EXPECT_NEAR(setup1_visibility(10), 0.0040, 0.00005);
}

TEST(Setup1, VisibilityStrictlyDecreasing) {
    for (unsigned m = 2; m + 2 <= 12; m += 2)
        EXPECT_GT(setup1_visibility_exact(m), setup1_visibility_exact(m + 2)) << m;
}

TEST(Setup1, PeriodAndEvenness) {
    for (unsigned m = 2; m <= 10; m += 2) {
        const double period = kTwoPi / (m / 2);
        for (double d : {0.1, 0.9, 2.3}) {
            EXPECT_NEAR(setup1_g(m, d + period), setup1_g(m, d), 1e-9 * setup1_g(m, d));
            EXPECT_NEAR(setup1_g(m, -d), setup1_g(m, d), 1e-9 * setup1_g(m, d));
        }
    }
}

TEST(Setup2, CoefficientExamples) {
    const auto a = setup2_coeffs(2, 2);
    EXPECT_EQ(a.c1, 104);
    EXPECT_EQ(a.c2, 8);
    EXPECT_EQ(a.parity_sign, -1);
    const auto b = setup2_coeffs(1, 2);
    EXPECT_EQ(b.c2, 0);
    const auto c = setup2_coeffs(4, 3);
    EXPECT_EQ(c.c1, 55296);
    EXPECT_EQ(c.c2, 2304);
    EXPECT_EQ(c.parity_sign, 1);
    EXPECT_EQ(c.visibility_exact(), ratio(1, 24));
    EXPECT_THROW(setup2_coeffs(0, 2), InvalidArgument);
    EXPECT_THROW(setup2_coeffs(2, 0), InvalidArgument);
}

TEST(Setup2, CurveExamples) {
    EXPECT_DOUBLE_EQ(setup2_g(2, 2, 0.0), 96.0);
    EXPECT_NEAR(setup2_g(2, 2, pi / 2), 112.0, 1e-12);
    const auto c = setup2_coeffs(3, 3);
    EXPECT_DOUBLE_EQ(setup2_g(3, 3, 0.0), (c.c1 + c.c2).convert_to<double>());
}

TEST(Setup2, MatchesTwoDetectorExpansion) {
    // m2 = 2: 2^(m1-1) m1! [m1^2 + 7 m1 + 8 - m1 (m1 - 1) cos 2 delta1]
    for (unsigned m1 = 1; m1 <= 8; ++m1) {
        const double pre = std::ldexp(factorial_exact(m1).convert_to<double>(), static_cast<int>(m1) - 1);
        for (double d : {0.0, 0.4, 1.9, 3.0}) {
            const double want = pre * (m1 * m1 + 7.0 * m1 + 8 - m1 * (m1 - 1.0) * std::cos(2 * d));
            EXPECT_LT(relative_gap(setup2_g(m1, 2, d), want), 1e-12) << m1;
        }
        EXPECT_EQ(setup2_visibility_exact(m1, 2), ratio(m1 * (m1 - 1), m1 * m1 + 7 * m1 + 8));
    }
}

TEST(Setup2, VisibilityExamples) {
    EXPECT_EQ(setup2_visibility_exact(2, 2), ratio(1, 13));
    EXPECT_EQ(setup2_visibility_exact(3, 2), ratio(3, 19));
    EXPECT_GT(setup2_visibility(3, 2), setup1_visibility(4));
    EXPECT_NEAR(setup2_visibility(5, 3), 0.0725, 5e-5);
    EXPECT_GT(setup2_visibility(5, 3), setup1_visibility(6));
    EXPECT_LT(setup2_visibility(2, 2), setup1_visibility(4));
}

TEST(Setup2, Invariants) {
    for (unsigned m2 = 1; m2 <= 8; ++m2) {
        for (unsigned m1 = 1; m1 <= 10; ++m1) {
            const auto c = setup2_coeffs(m1, m2);
            EXPECT_GT(c.c1, c.c2);
            EXPECT_GE(c.c2, 0);
            EXPECT_EQ(c.parity_sign, m2 % 2 == 1 ? 1 : -1);
            if (m1 < m2) {
                EXPECT_EQ(c.c2, 0);
                EXPECT_DOUBLE_EQ(setup2_g(m1, m2, 0.3), setup2_g(m1, m2, 2.2));
            } else {
                EXPECT_EQ(c.c2, (BigInt(1) << (m1 - m2 + 1)) * factorial_exact(m1) * factorial_exact(m1) /
                                     factorial_exact(m1 - m2));
            }
            const double period = kTwoPi / m2;
            for (double d : {0.2, 1.4}) {
                const double g = setup2_g(m1, m2, d);
                EXPECT_NEAR(setup2_g(m1, m2, d + period), g, 1e-9 * g);
                EXPECT_NEAR(setup2_g(m1, m2, -d), g, 1e-9 * g);
            }
        }
    }
}

TEST(Setup2, VisibilityIncreasesWithMovingDetectors) {
    for (unsigned m2 = 2; m2 <= 10; ++m2)
        for (unsigned m1 = m2; m1 < 10; ++m1)
            EXPECT_GT(setup2_visibility_exact(m1 + 1, m2), setup2_visibility_exact(m1, m2))
                << m1 << "," << m2;
}

TEST(Crossover, Thresholds) {
    EXPECT_EQ(crossover_threshold(2), 3u);
    EXPECT_EQ(crossover_threshold(3), 5u);
    EXPECT_EQ(crossover_threshold(4), 6u);
    EXPECT_EQ(crossover_threshold(5), 7u);
    EXPECT_THROW(crossover_threshold(1), InvalidArgument);
    for (unsigned m2 = 2; m2 <= 6; ++m2) {
        const unsigned t = crossover_threshold(m2);
        EXPECT_GT(setup2_visibility_exact(t, m2), setup1_visibility_exact(2 * m2));
        EXPECT_LE(setup2_visibility_exact(t - 1, m2), setup1_visibility_exact(2 * m2));
    }
}

TEST(ClosedFormOracle, Setup1AgainstPathsum) {
    std::mt19937_64 rng(101);
    std::uniform_real_distribution<double> phase(0.0, kTwoPi);
    const auto src = SourceArray::equidistant(2);
    for (unsigned m = 2; m <= 8; m += 2) {
        const auto layout = DetectorLayout::mmp_spread(m / 2);
        for (int i = 0; i < 25; ++i) {
            const double d = phase(rng);
            EXPECT_LT(relative_gap(setup1_g(m, d), correlation_pathsum(src, layout.deltas(d))), 1e-9)
                << "M=" << m << " delta1=" << d;
        }
    }
}

TEST(ClosedFormOracle, Setup2AgainstPathsum) {
    std::mt19937_64 rng(202);
    std::uniform_real_distribution<double> phase(0.0, kTwoPi);
    const auto src = SourceArray::equidistant(2);
    for (unsigned m1 = 1; m1 <= 7; ++m1) {
        for (unsigned m2 = 1; m1 + m2 <= 8; ++m2) {
            const auto layout = DetectorLayout::co_located(m1, m2);
            for (int i = 0; i < 25; ++i) {
                const double d = phase(rng);
                EXPECT_LT(relative_gap(setup2_g(m1, m2, d), correlation_pathsum(src, layout.deltas(d))),
                          1e-9)
                    << m1 << "," << m2 << " delta1=" << d;
            }
        }
    }
}

TEST(Curves, AnalyticCurves) {
    const auto grid = uniform_grid(13);
    const auto c = setup2_curve(3, 2, grid);
    EXPECT_EQ(c.values.size(), 13u);
    EXPECT_EQ(c.provenance, "analytic");
    EXPECT_DOUBLE_EQ(c.values[3], setup2_g(3, 2, grid[3]));
    const auto n = c.normalized_copy();
    EXPECT_TRUE(n.normalized);
    EXPECT_DOUBLE_EQ(*std::max_element(n.values.begin(), n.values.end()), 1.0);
    const auto s = setup1_curve(6, grid);
    EXPECT_EQ(s.layout, "mmp-spread");
    EXPECT_EQ(s.order, 6u);
}
