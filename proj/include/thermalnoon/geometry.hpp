#pragma once

#include <cstddef>
#include <numbers>
#include <optional>
#include <string_view>
#include <vector>

namespace thermalnoon {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Absolute tolerance for comparing reduced phases.
inline constexpr double kPhaseTolerance = 1e-12;

// Canonical representative of a phase in [0, 2pi).
double reduce_phase(double phase);

// Distance between two phases on the circle, in [0, pi].
double phase_distance(double a, double b);

/// Emitters on a line, each described by its integer position `prefactors[l]`
/// in units of the spacing d and its mean photon number. The first prefactor
/// is always zero.
class SourceArray {
public:
    SourceArray(std::vector<int> prefactors, std::vector<double> nbar,
                std::optional<double> spacing_d = std::nullopt);

    /// K equidistant sources 0, 1, ..., K-1 with a common mean photon number.
    static SourceArray equidistant(std::size_t count, double nbar = 1.0);

    std::size_t size() const { return prefactors_.size(); }
    const std::vector<int>& prefactors() const { return prefactors_; }
    const std::vector<double>& nbar() const { return nbar_; }
    std::optional<double> spacing_d() const { return spacing_d_; }
    int max_prefactor() const { return prefactors_.back(); }

private:
    std::vector<int> prefactors_;
    std::vector<double> nbar_;
    std::optional<double> spacing_d_;
};

enum class MovingKind {
    CoLocated,   // all moving detectors sit at delta1
    MmpSpread,   // moving detectors at the magic pattern shifted by delta1
};

std::string_view to_string(MovingKind kind);
MovingKind moving_kind_from_string(std::string_view name);

/// Fixed detectors at `fixed_phases` plus `moving_count` detectors that
/// follow the scan phase delta1.
class DetectorLayout {
public:
    DetectorLayout(std::vector<double> fixed_phases, std::size_t moving_count,
                   MovingKind moving_kind);

    /// m2 fixed detectors at the magic positions, m1 co-located moving detectors.
    static DetectorLayout co_located(std::size_t m1, std::size_t m2);
    /// m fixed detectors at the magic positions, m at the moving magic positions.
    static DetectorLayout mmp_spread(std::size_t m);

    const std::vector<double>& fixed_phases() const { return fixed_; }
    std::size_t m1() const { return moving_count_; }
    std::size_t m2() const { return fixed_.size(); }
    std::size_t order() const { return moving_count_ + fixed_.size(); }
    MovingKind moving_kind() const { return kind_; }

    /// Offsets of the moving detectors relative to delta1.
    std::vector<double> moving_offsets() const;

    /// All M detector phases for scan phase delta1: moving detectors first,
    /// then the fixed ones. Moving phases are reduced into [0, 2pi).
    std::vector<double> deltas(double delta1) const;

private:
    std::vector<double> fixed_;
    std::size_t moving_count_;
    MovingKind kind_;
};

/// The m magic positions {0, 2pi/m, ..., 2pi(m-1)/m}.
std::vector<double> magic_positions(std::size_t m);

/// magic_positions(m) rigidly shifted by delta1, reduced into [0, 2pi).
std::vector<double> moving_magic_positions(double delta1, std::size_t m);

/// Far-field detector phase k d sin(theta).
double phase_from_angle(double k, double d, double theta);

}  // namespace thermalnoon
