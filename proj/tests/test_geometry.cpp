#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "thermalnoon/errors.hpp"
#include "thermalnoon/geometry.hpp"

using namespace thermalnoon;

namespace {

constexpr double pi = std::numbers::pi;

void expect_phases(const std::vector<double>& got, const std::vector<double>& want) {
    ASSERT_EQ(got.size(), want.size());
    for (std::size_t i = 0; i < got.size(); ++i)
        EXPECT_LT(phase_distance(got[i], want[i]), 1e-12) << "index " << i;
}

}  // namespace

TEST(MagicPositions, SmallCases) {
    expect_phases(magic_positions(1), {0.0});
    expect_phases(magic_positions(2), {0.0, pi});
    expect_phases(magic_positions(3), {0.0, 2 * pi / 3, 4 * pi / 3});
    EXPECT_THROW(magic_positions(0), InvalidArgument);
}

TEST(MagicPositions, SumIsArithmeticSeries) {
    for (std::size_t m = 1; m <= 12; ++m) {
        double sum = 0.0;
        for (double p : magic_positions(m)) sum += p;
        EXPECT_LT(phase_distance(reduce_phase(sum), reduce_phase(pi * (m - 1.0))), 1e-9) << m;
    }
}

TEST(MovingMagicPositions, ShiftOfMagicPositions) {
    expect_phases(moving_magic_positions(0.0, 2), {0.0, pi});
    expect_phases(moving_magic_positions(pi / 4, 2), {pi / 4, 5 * pi / 4});
    expect_phases(moving_magic_positions(0.1, 3), {0.1, 0.1 + 2 * pi / 3, 0.1 + 4 * pi / 3});
    EXPECT_THROW(moving_magic_positions(1.0, 0), InvalidArgument);

    for (double d1 : {-7.0, 0.3, 2.5, 9.9}) {
        for (std::size_t m = 1; m <= 6; ++m) {
            const auto moving = moving_magic_positions(d1, m);
            const auto fixed = magic_positions(m);
            for (std::size_t j = 0; j < m; ++j) {
                EXPECT_GE(moving[j], 0.0);
                EXPECT_LT(moving[j], kTwoPi);
                EXPECT_LT(phase_distance(moving[j] - d1, fixed[j]), 1e-12);
            }
        }
    }
}

TEST(PhaseFromAngle, Examples) {
    EXPECT_EQ(phase_from_angle(3.0, 5.0, 0.0), 0.0);
    const double k = kTwoPi / 532e-9;
    const double d = 200e-6;
    const double theta = std::asin(532e-9 / (2 * d));
    EXPECT_NEAR(phase_from_angle(k, d, theta), pi, 1e-9);
    EXPECT_DOUBLE_EQ(phase_from_angle(k, d, pi / 2), k * d);
    EXPECT_THROW(phase_from_angle(0.0, 1.0, 0.1), InvalidArgument);
    EXPECT_THROW(phase_from_angle(1.0, -1.0, 0.1), InvalidArgument);
}

TEST(ReducePhase, CanonicalRange) {
    EXPECT_EQ(reduce_phase(0.0), 0.0);
    EXPECT_NEAR(reduce_phase(-pi / 2), 1.5 * pi, 1e-15);
    EXPECT_NEAR(reduce_phase(5 * pi), pi, 1e-12);
    EXPECT_LT(reduce_phase(kTwoPi), kTwoPi);
    EXPECT_LT(phase_distance(1e-14, kTwoPi - 1e-14), 1e-12);
}

TEST(SourceArray, Validation) {
    const auto eq = SourceArray::equidistant(3, 0.5);
    EXPECT_EQ(eq.prefactors(), (std::vector<int>{0, 1, 2}));
    EXPECT_EQ(eq.nbar(), (std::vector<double>{0.5, 0.5, 0.5}));
    EXPECT_EQ(SourceArray({0, 2}, {}).nbar(), (std::vector<double>{1.0, 1.0}));

    EXPECT_THROW(SourceArray({}, {}), InvalidArgument);
    EXPECT_THROW(SourceArray({1, 2}, {}), InvalidArgument);
    EXPECT_THROW(SourceArray({0, 2, 1}, {}), InvalidArgument);
    EXPECT_THROW(SourceArray({0, 1}, {1.0, 0.0}), InvalidArgument);
    EXPECT_THROW(SourceArray({0, 1}, {1.0}), InvalidArgument);
}

TEST(DetectorLayout, DeltasAndCounts) {
    const auto co = DetectorLayout::co_located(3, 2);
    EXPECT_EQ(co.order(), 5u);
    expect_phases(co.deltas(0.4), {0.4, 0.4, 0.4, 0.0, pi});

    const auto spread = DetectorLayout::mmp_spread(2);
    EXPECT_EQ(spread.m1(), 2u);
    EXPECT_EQ(spread.m2(), 2u);
    expect_phases(spread.deltas(pi / 4), {pi / 4, 5 * pi / 4, 0.0, pi});

    EXPECT_THROW(DetectorLayout::co_located(0, 0), InvalidArgument);
    EXPECT_THROW(DetectorLayout({0.0}, 2, MovingKind::MmpSpread), InvalidArgument);
    EXPECT_THROW(DetectorLayout({7.0}, 1, MovingKind::CoLocated), InvalidArgument);
}

TEST(MovingKind, StringRoundTrip) {
    for (auto k : {MovingKind::CoLocated, MovingKind::MmpSpread})
        EXPECT_EQ(moving_kind_from_string(to_string(k)), k);
    EXPECT_THROW(moving_kind_from_string("diagonal"), InvalidArgument);
}
