#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace thermalnoon {

/// G^(M)(delta1) sampled on a phase grid.
///
/// Monte Carlo curves additionally carry per-point standard errors and the
/// per-batch means they were derived from; fit_cosine resamples those batches
/// to bootstrap parameter errors.
struct CorrelationCurve {
    std::vector<double> grid;
    std::vector<double> values;
    std::size_t order = 0;
    std::size_t m1 = 0;
    std::size_t m2 = 0;
    std::string layout;       // "co-located" or "mmp-spread"
    std::string provenance;   // "analytic", "pathsum", "speckle", ...
    bool normalized = false;
    std::optional<std::vector<double>> stderr_values;
    std::vector<std::vector<double>> batch_values;
    std::uint64_t seed = 0;
    std::uint64_t frames = 0;
    // Highest harmonic any single realization can contain; 0 when unknown.
    std::size_t max_harmonic = 0;

    /// Throws InvalidArgument unless the grid and values are consistent.
    void validate() const;

    /// Copy scaled so that the largest value is 1 (errors scaled alike).
    CorrelationCurve normalized_copy() const;
};

/// Uniform grid of `points` samples covering [0, 2pi] including both ends.
std::vector<double> uniform_grid(std::size_t points);

}  // namespace thermalnoon
