#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "thermalnoon/curve.hpp"
#include "thermalnoon/geometry.hpp"

namespace thermalnoon {

inline constexpr std::size_t kDefaultGridPoints = 181;
inline constexpr std::size_t kDefaultBatches = 20;
inline constexpr std::size_t kDefaultBootstrapResamples = 200;

/// Monte Carlo run description. Frames are independent speckle realizations.
struct SpeckleConfig {
    SourceArray sources = SourceArray::equidistant(2);
    DetectorLayout layout = DetectorLayout::co_located(1, 1);
    std::uint64_t frames = 0;
    std::uint64_t seed = 0;
    std::vector<double> grid = uniform_grid(kDefaultGridPoints);
    double slit_ratio = 0.0;   // a/d; 0 means point sources
    unsigned workers = 1;
    std::size_t batches = kDefaultBatches;
    // Each frame is read out at this many equally spaced global offsets of
    // the whole layout, as a camera correlates every pixel translation.
    // 0 picks the smallest count that integrates the global phase exactly;
    // 1 reads a single layout per frame.
    std::size_t shifts = 0;

    /// Offset count actually used (resolves shifts == 0).
    std::size_t effective_shifts() const;

    void validate() const;
};

/// Frame-averaged product of intensities at the layout positions, for every
/// scan phase in the grid. Results depend only on the config and seed, never
/// on the worker count.
CorrelationCurve simulate_curve(const SpeckleConfig& config);

/// One Fourier component of a fitted curve.
struct Harmonic {
    unsigned k = 0;
    double cos_coef = 0.0;
    double sin_coef = 0.0;
    double amplitude = 0.0;
    double stderr_cos = 0.0;
    double stderr_sin = 0.0;

    /// True if either quadrature exceeds `sigmas` standard errors.
    bool significant(double sigmas = 3.0) const;
};

struct FitResult {
    double offset = 0.0;      // A
    double amplitude = 0.0;   // B, signed
    unsigned fit_frequency = 0;
    unsigned dominant_frequency = 0;
    double visibility = 0.0;
    double stderr_offset = 0.0;
    double stderr_amplitude = 0.0;
    double stderr_visibility = 0.0;
    int expected_parity = 1;
    bool parity_ok = false;
    std::vector<Harmonic> harmonics;
};

/// Least-squares fit of A + B cos(frequency * delta1). Parameter errors are
/// bootstrapped over the curve's batch means when it carries them.
FitResult fit_cosine(const CorrelationCurve& curve, unsigned frequency,
                     std::size_t resamples = kDefaultBootstrapResamples);

/// Sign the interference term must carry for the curve's layout.
int expected_parity(const CorrelationCurve& curve);

struct ConvergenceReport {
    std::uint64_t frames_small = 0;
    std::uint64_t frames_large = 0;
    double stderr_small = 0.0;
    double stderr_large = 0.0;
    double ratio = 0.0;      // stderr_small / stderr_large
    double expected = 0.0;   // sqrt(frames_large / frames_small)
    bool consistent = false; // ratio within a factor 2 of expected
};

ConvergenceReport convergence_probe(const SpeckleConfig& config, std::uint64_t frames_small,
                                    std::uint64_t frames_large);

}  // namespace thermalnoon
