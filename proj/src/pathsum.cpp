#include "thermalnoon/pathsum.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>

#include "thermalnoon/errors.hpp"

namespace thermalnoon {

unsigned PhotonPartition::total() const {
    return std::accumulate(counts.begin(), counts.end(), 0u);
}

namespace {

void compose(std::vector<PhotonPartition>& out, std::vector<unsigned>& counts, std::size_t slot,
             unsigned remaining) {
    if (slot + 1 == counts.size()) {
        counts[slot] = remaining;
        out.push_back(PhotonPartition{counts});
        return;
    }
    for (unsigned n = remaining + 1; n-- > 0;) {
        counts[slot] = n;
        compose(out, counts, slot + 1, remaining - n);
    }
}

double factorial(unsigned n) {
    double f = 1.0;
    for (unsigned i = 2; i <= n; ++i) f *= i;
    return f;
}

}  // namespace

std::vector<PhotonPartition> enumerate_partitions(std::size_t sources, unsigned photons) {
    if (sources == 0) throw InvalidArgument("enumerate_partitions requires at least one source");
    std::vector<PhotonPartition> out;
    std::vector<unsigned> counts(sources, 0);
    compose(out, counts, 0, photons);
    return out;
}

PathAmplitude multiset_phase_sum(std::vector<int> prefactors, std::span<const double> deltas) {
    if (prefactors.size() != deltas.size())
        throw InvalidArgument("multiset_phase_sum: " + std::to_string(prefactors.size()) +
                              " prefactors for " + std::to_string(deltas.size()) + " phases");
    std::sort(prefactors.begin(), prefactors.end());
    PathAmplitude sum{0.0, 0.0};
    do {
        double phase = 0.0;
        for (std::size_t j = 0; j < deltas.size(); ++j) phase += prefactors[j] * deltas[j];
        sum += std::polar(1.0, phase);
    } while (std::next_permutation(prefactors.begin(), prefactors.end()));
    if (std::abs(sum) < kZeroAmplitude) return {0.0, 0.0};
    return sum;
}

double correlation_pathsum(const SourceArray& sources, std::span<const double> deltas) {
    const std::size_t order = deltas.size();
    if (order == 0) throw InvalidArgument("correlation_pathsum requires at least one detector");
    if (order > kMaxPathsumOrder)
        throw CapacityExceeded("correlation_pathsum: order " + std::to_string(order) +
                               " exceeds " + std::to_string(kMaxPathsumOrder) +
                               "; use correlation_permanent instead");

    const auto& alpha = sources.prefactors();
    const auto& nbar = sources.nbar();
    double total = 0.0;
    std::vector<int> multiset;
    multiset.reserve(order);
    for (const auto& part : enumerate_partitions(sources.size(), static_cast<unsigned>(order))) {
        double weight = 1.0;
        multiset.clear();
        for (std::size_t l = 0; l < part.counts.size(); ++l) {
            const unsigned n = part.counts[l];
            weight *= factorial(n) * std::pow(nbar[l], static_cast<double>(n));
            multiset.insert(multiset.end(), n, alpha[l]);
        }
        total += weight * std::norm(multiset_phase_sum(multiset, deltas));
    }
    return total;
}

std::complex<double> permanent(std::span<const std::complex<double>> matrix, std::size_t n) {
    if (matrix.size() != n * n) throw InvalidArgument("permanent: matrix is not n x n");
    if (n == 0) return {1.0, 0.0};
    if (n > kMaxPermanentOrder)
        throw CapacityExceeded("permanent: dimension " + std::to_string(n) + " exceeds " +
                               std::to_string(kMaxPermanentOrder));

    using wide = std::complex<long double>;
    std::vector<wide> row_sums(n, wide{0.0L, 0.0L});
    wide total{0.0L, 0.0L};
    const std::uint64_t subsets = std::uint64_t{1} << n;
    std::uint64_t gray = 0;
    for (std::uint64_t k = 1; k < subsets; ++k) {
        const int col = std::countr_zero(k);
        const std::uint64_t bit = std::uint64_t{1} << col;
        gray ^= bit;
        const long double sign = (gray & bit) ? 1.0L : -1.0L;
        for (std::size_t i = 0; i < n; ++i) {
            const auto& a = matrix[i * n + static_cast<std::size_t>(col)];
            row_sums[i] += sign * wide{a.real(), a.imag()};
        }
        wide prod = row_sums[0];
        for (std::size_t i = 1; i < n; ++i) prod *= row_sums[i];
        if (std::popcount(gray) & 1)
            total -= prod;
        else
            total += prod;
    }
    if (n & 1) total = -total;
    return {static_cast<double>(total.real()), static_cast<double>(total.imag())};
}

std::vector<std::complex<double>> coherence_matrix(const SourceArray& sources,
                                                   std::span<const double> deltas) {
    const std::size_t m = deltas.size();
    std::vector<std::complex<double>> j(m * m);
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t c = 0; c < m; ++c) {
            std::complex<double> s{0.0, 0.0};
            for (std::size_t l = 0; l < sources.size(); ++l)
                s += sources.nbar()[l] *
                     std::polar(1.0, sources.prefactors()[l] * (deltas[r] - deltas[c]));
            j[r * m + c] = s;
        }
    return j;
}

double correlation_permanent(const SourceArray& sources, std::span<const double> deltas) {
    const std::size_t order = deltas.size();
    if (order == 0) throw InvalidArgument("correlation_permanent requires at least one detector");
    if (order > kMaxPermanentOrder)
        throw CapacityExceeded("correlation_permanent: order " + std::to_string(order) +
                               " exceeds " + std::to_string(kMaxPermanentOrder));
    const auto p = permanent(coherence_matrix(sources, deltas), order);
    if (std::abs(p.imag()) > 1e-8 * std::max(std::abs(p.real()), 1.0))
        throw NumericalFailure("correlation_permanent: nonreal permanent (imag " +
                               std::to_string(p.imag()) + ")");
    // Hermitian PSD coherence matrices have nonnegative permanents; clip rounding.
    return std::max(p.real(), 0.0);
}

}  // namespace thermalnoon
