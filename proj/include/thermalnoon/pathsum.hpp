#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "thermalnoon/geometry.hpp"

namespace thermalnoon {

/// Final state of an M-photon detection event: how many of the detected
/// photons were emitted by each source.
struct PhotonPartition {
    std::vector<unsigned> counts;

    unsigned total() const;
    bool operator==(const PhotonPartition&) const = default;
};

using PathAmplitude = std::complex<double>;

// Largest order accepted by the arrangement enumerator.
inline constexpr std::size_t kMaxPathsumOrder = 12;
// Largest order accepted by the permanent evaluator (2^M terms).
inline constexpr std::size_t kMaxPermanentOrder = 20;
// Amplitudes below this modulus are exact root-of-unity cancellations.
inline constexpr double kZeroAmplitude = 1e-9;

/// All compositions of `photons` into `sources` nonnegative parts, ordered with
/// the first count descending: (M,0,..), (M-1,1,..), ...
std::vector<PhotonPartition> enumerate_partitions(std::size_t sources, unsigned photons);

/// Sum of exp(i * sum_j prefactor_{l_j} * delta_j) over the distinct
/// arrangements of the prefactor multiset. Repeated prefactors are not
/// double counted.
PathAmplitude multiset_phase_sum(std::vector<int> prefactors, std::span<const double> deltas);

/// M-th order correlation as an incoherent sum over final states of the
/// thermal weight prod_l n_l! nbar_l^{n_l} times the squared path sum.
double correlation_pathsum(const SourceArray& sources, std::span<const double> deltas);

/// Permanent of a row-major n x n complex matrix (Ryser inclusion-exclusion
/// with Gray-code column updates).
std::complex<double> permanent(std::span<const std::complex<double>> matrix, std::size_t n);

/// Coherence matrix J_jk = sum_l nbar_l exp(i alpha_l (delta_j - delta_k)).
std::vector<std::complex<double>> coherence_matrix(const SourceArray& sources,
                                                   std::span<const double> deltas);

/// The same correlation evaluated through the Gaussian moment theorem as the
/// permanent of the coherence matrix.
double correlation_permanent(const SourceArray& sources, std::span<const double> deltas);

}  // namespace thermalnoon
