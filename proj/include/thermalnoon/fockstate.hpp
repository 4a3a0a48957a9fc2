#pragma once

#include <complex>
#include <cstddef>
#include <span>

#include <Eigen/Dense>

namespace thermalnoon {

/// Two-mode density matrix over the truncated basis |n1, n2>, 0 <= n <= cutoff.
struct TwoModeDensityMatrix {
    unsigned cutoff = 0;
    Eigen::MatrixXcd entries;
    // Probability mass lost to truncation before renormalization.
    double truncation_error = 0.0;
    // Trace before renormalization; for a projected state this is the
    // detection rate of the projecting measurement.
    double weight = 1.0;

    std::size_t dim() const { return static_cast<std::size_t>(cutoff + 1) * (cutoff + 1); }
    Eigen::Index index(unsigned n1, unsigned n2) const {
        return static_cast<Eigen::Index>(n1) * (cutoff + 1) + n2;
    }
    std::complex<double> element(unsigned n1, unsigned n2, unsigned k1, unsigned k2) const {
        return entries(index(n1, n2), index(k1, k2));
    }
    double trace() const { return entries.trace().real(); }

    double hermiticity_error() const;
    double min_eigenvalue() const;
    /// Copy with every coherence (off-diagonal element) removed.
    TwoModeDensityMatrix dephased() const;
    /// Largest |element| whose offset (dn1, dn2) is neither (0,0) nor
    /// (+m,-m) / (-m,+m).
    double max_outside_support(unsigned m) const;
};

/// a_mode^power, mode 1 or 2.
struct ModeOperatorPower {
    unsigned mode = 1;
    unsigned power = 0;
};

/// op |psi> applied to every column of `rho` (left multiplication).
Eigen::MatrixXcd apply_left(const ModeOperatorPower& op, const Eigen::MatrixXcd& rho, unsigned cutoff);

/// Product of two independent thermal modes with the given mean photon
/// number, truncated and renormalized. Throws TruncationError if more than
/// 1e-6 of the probability lies above the cutoff.
TwoModeDensityMatrix thermal_two_mode(double nbar, unsigned cutoff);

/// Cutoff large enough for the given mean photon number and detector counts.
unsigned default_cutoff(double nbar, unsigned m1, unsigned m2);

/// <prod E-(delta_j) prod E+(delta_j)> with E+(delta) = a1 + exp(-i delta) a2.
double field_correlation(const TwoModeDensityMatrix& rho, std::span<const double> deltas);

/// State after m2 photons were detected at the magic positions:
/// A rho A^dagger / tr(A rho A^dagger), A = a1^m2 + (-1)^(m2-1) a2^m2.
/// The returned `weight` holds tr(A rho A^dagger).
TwoModeDensityMatrix project_magic(const TwoModeDensityMatrix& rho, unsigned m2);

/// m1-th order correlation with all detectors at delta1.
double g_moving(const TwoModeDensityMatrix& rho, unsigned m1, double delta1);

struct IsomorphismReport {
    double lhs = 0.0;   // full correlation on the unprojected state
    double rhs = 0.0;   // moving-detector correlation on the projected state times G(MP)
    double g_magic = 0.0;
    double relative_gap = 0.0;
    double truncation_error = 0.0;
    double tolerance = 0.0;
    bool ok = false;
};

IsomorphismReport verify_isomorphism(double nbar, unsigned m1, unsigned m2, double delta1,
                                     unsigned cutoff);

/// <Psi|rho|Psi> for the N00N state (|m2,0> + (-1)^(m2-1) |0,m2>)/sqrt(2).
double noon_overlap(const TwoModeDensityMatrix& rho, unsigned m2);

}  // namespace thermalnoon
