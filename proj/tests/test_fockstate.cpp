#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "thermalnoon/errors.hpp"
#include "thermalnoon/fockstate.hpp"
#include "thermalnoon/geometry.hpp"
#include "thermalnoon/pathsum.hpp"
#include "thermalnoon/speckle.hpp"

using namespace thermalnoon;

namespace {

constexpr double pi = std::numbers::pi;

TwoModeDensityMatrix pure_state(unsigned cutoff,
                                std::initializer_list<std::tuple<unsigned, unsigned, double>> amps) {
    TwoModeDensityMatrix rho;
    rho.cutoff = cutoff;
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(rho.dim()));
    for (auto [n1, n2, a] : amps) psi(rho.index(n1, n2)) = a;
    rho.entries = psi * psi.adjoint();
    return rho;
}

}  // namespace

TEST(Thermal, VacuumAndNormalization) {
    const auto vac = thermal_two_mode(0.0, 4);
    EXPECT_DOUBLE_EQ(vac.element(0, 0, 0, 0).real(), 1.0);
    EXPECT_DOUBLE_EQ(vac.trace(), 1.0);
    EXPECT_EQ(vac.truncation_error, 0.0);

    const auto rho = thermal_two_mode(0.5, 30);
    EXPECT_LT(rho.truncation_error, 1e-6);
    EXPECT_NEAR(rho.trace(), 1.0, 1e-12);
    EXPECT_LT(rho.hermiticity_error(), 1e-12);
    EXPECT_GE(rho.min_eigenvalue(), -1e-10);
    // p(1) p(2) = nbar^3 / (1 + nbar)^5 before renormalization
    EXPECT_NEAR(rho.element(1, 2, 1, 2).real(), std::pow(0.5, 3) / std::pow(1.5, 5), 1e-12);

    EXPECT_THROW(thermal_two_mode(5.0, 10), TruncationError);
    EXPECT_THROW(thermal_two_mode(-1.0, 10), InvalidArgument);
}

TEST(Thermal, DefaultCutoff) {
    EXPECT_EQ(default_cutoff(0.5, 2, 2), 30u);
    EXPECT_EQ(default_cutoff(3.0, 4, 4), 48u);
}

TEST(ApplyLeft, AnnihilationAmplitudes) {
    const auto rho = pure_state(4, {{3, 1, 1.0}});
    const auto out = apply_left({1, 2}, rho.entries, 4);
    // a1^2 |3,1> = sqrt(3 * 2) |1,1>
    EXPECT_NEAR(out(rho.index(1, 1), rho.index(3, 1)).real(), std::sqrt(6.0), 1e-12);
    EXPECT_NEAR(apply_left({2, 2}, rho.entries, 4).norm(), 0.0, 1e-15);
    EXPECT_THROW(apply_left({3, 1}, rho.entries, 4), InvalidArgument);
}

TEST(ProjectMagic, VacuumIsZeroProbability) {
    const auto vac = thermal_two_mode(0.0, 6);
    for (unsigned m2 = 1; m2 <= 3; ++m2) EXPECT_THROW(project_magic(vac, m2), ZeroProbabilityEvent);
}

TEST(ProjectMagic, SupportAndPositivity) {
    const auto rho = thermal_two_mode(0.5, 30);
    for (unsigned m2 = 1; m2 <= 3; ++m2) {
        const auto p = project_magic(rho, m2);
        EXPECT_LE(p.max_outside_support(m2), 1e-12) << m2;
        EXPECT_NEAR(p.trace(), 1.0, 1e-12);
        EXPECT_LT(p.hermiticity_error(), 1e-12);
        EXPECT_GE(p.min_eigenvalue(), -1e-10);
        // the cross coherence <m2,0| rho |0,m2> is present with the parity sign
        const double cross = p.element(m2, 0, 0, m2).real();
        EXPECT_NE(cross, 0.0);
        EXPECT_EQ(cross > 0.0, m2 % 2 == 1) << m2;
    }
    // the m2 = 2 projection has no coherence at offset (1, -1)
    EXPECT_GT(project_magic(rho, 1).max_outside_support(2), 1e-6);
}

TEST(GMoving, SinglePhoton) {
    const auto rho = pure_state(3, {{1, 0, 1.0}});
    for (double d : {0.0, 1.0, 4.0}) EXPECT_NEAR(g_moving(rho, 1, d), 1.0, 1e-12);
    EXPECT_THROW(g_moving(rho, 4, 0.0), TruncationError);
}

TEST(GMoving, NoonStateFringe) {
    const double s = 1.0 / std::sqrt(2.0);
    const auto rho = pure_state(4, {{2, 0, s}, {0, 2, -s}});
    for (double d : {0.0, 0.3, pi / 2, 2.0, 5.5})
        EXPECT_NEAR(g_moving(rho, 2, d), 2.0 * (1.0 - std::cos(2 * d)), 1e-12) << d;
    EXPECT_NEAR(noon_overlap(rho, 2), 1.0, 1e-12);
}

TEST(GMoving, ProjectedThermalHasNoonFrequency) {
    const auto rho = thermal_two_mode(0.5, 30);
    for (unsigned m2 = 1; m2 <= 3; ++m2) {
        const auto p = project_magic(rho, m2);
        CorrelationCurve c;
        c.grid = uniform_grid(73);
        for (double d : c.grid) {
            const double g = g_moving(p, m2, d);
            EXPECT_GE(g, 0.0);
            EXPECT_NEAR(g_moving(p, m2, d + kTwoPi), g, 1e-9 * (1.0 + g));
            c.values.push_back(g);
        }
        c.m2 = m2;
        c.layout = "co-located";
        const auto fit = fit_cosine(c, m2);
        EXPECT_EQ(fit.dominant_frequency, m2);
        EXPECT_EQ(fit.expected_parity, m2 % 2 == 1 ? 1 : -1);
        EXPECT_TRUE(fit.parity_ok) << m2;
    }
}

TEST(FieldCorrelation, MatchesPathsum) {
    const auto rho = thermal_two_mode(1.0, 40);
    const std::vector<double> mp{0.0, pi};
    EXPECT_NEAR(field_correlation(rho, mp), 4.0, 1e-6);
    const std::vector<double> d{0.4, 0.4, 0.0, pi};
    const double want = correlation_pathsum(SourceArray::equidistant(2), d);
    EXPECT_LT(std::abs(field_correlation(rho, d) - want) / want, 1e-6);
}

TEST(Isomorphism, Examples) {
    const auto r = verify_isomorphism(0.5, 2, 2, 1.0, 30);
    EXPECT_LT(r.relative_gap, 1e-6);
    EXPECT_TRUE(r.ok);

    const auto hbt = verify_isomorphism(1.0, 1, 1, 0.0, 40);
    EXPECT_NEAR(hbt.lhs, correlation_pathsum(SourceArray::equidistant(2), std::vector<double>{0.0, 0.0}),
                1e-6);
    EXPECT_THROW(verify_isomorphism(0.5, 20, 20, 0.0, 30), TruncationError);
}

TEST(Isomorphism, GridSweep) {
    for (unsigned m1 = 1; m1 <= 3; ++m1)
        for (unsigned m2 = 1; m2 <= 3; ++m2)
            for (int i = 0; i < 9; ++i) {
                const double d = kTwoPi * i / 9.0;
                const auto r = verify_isomorphism(0.5, m1, m2, d, 30);
                EXPECT_LT(r.relative_gap, 1e-6) << m1 << "," << m2 << " at " << d;
            }
}

// For the untruncated state the overlap is 4 nbar^2 / (1 + nbar)^6, and the
// diagonal part alone carries 7/8 of it.
TEST(NoonOverlap, ThermalProjection) {
    for (double nbar : {0.05, 0.25, 0.5}) {
        const auto p = project_magic(thermal_two_mode(nbar, 30), 2);
        const double want = 4 * nbar * nbar / std::pow(1 + nbar, 6);
        const double full = noon_overlap(p, 2);
        EXPECT_NEAR(full, want, 1e-9) << nbar;
        const double diag = noon_overlap(p.dephased(), 2);
        EXPECT_NEAR(diag, 0.875 * want, 1e-9);
        EXPECT_GT(full, diag);
    }
    EXPECT_NEAR(noon_overlap(project_magic(thermal_two_mode(0.5, 30), 2), 2), 0.0877914951989, 1e-12);
    EXPECT_THROW(noon_overlap(thermal_two_mode(0.5, 30), 0), InvalidArgument);
}
