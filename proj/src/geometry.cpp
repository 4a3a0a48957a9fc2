#include "thermalnoon/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "thermalnoon/errors.hpp"

namespace thermalnoon {

double reduce_phase(double phase) {
    double r = std::fmod(phase, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    // fmod of a tiny negative value can round up to exactly 2pi
    if (r >= kTwoPi) r = 0.0;
    return r;
}

double phase_distance(double a, double b) {
    const double d = reduce_phase(a - b);
    return std::min(d, kTwoPi - d);
}

SourceArray::SourceArray(std::vector<int> prefactors, std::vector<double> nbar,
                         std::optional<double> spacing_d)
    : prefactors_(std::move(prefactors)), nbar_(std::move(nbar)), spacing_d_(spacing_d) {
    if (prefactors_.empty()) throw InvalidArgument("source array needs at least one source");
    if (prefactors_.front() != 0) throw InvalidArgument("first source prefactor must be 0");
    if (!std::is_sorted(prefactors_.begin(), prefactors_.end()))
        throw InvalidArgument("source prefactors must be sorted ascending");
    if (nbar_.empty()) nbar_.assign(prefactors_.size(), 1.0);
    if (nbar_.size() != prefactors_.size())
        throw InvalidArgument("nbar list must have one entry per source");
    for (double n : nbar_)
        if (!(n > 0.0) || !std::isfinite(n))
            throw InvalidArgument("mean photon numbers must be positive and finite");
    if (spacing_d_ && !(*spacing_d_ > 0.0))
        throw InvalidArgument("source spacing must be positive");
}

SourceArray SourceArray::equidistant(std::size_t count, double nbar) {
    if (count == 0) throw InvalidArgument("source array needs at least one source");
    std::vector<int> pref(count);
    for (std::size_t l = 0; l < count; ++l) pref[l] = static_cast<int>(l);
    return SourceArray(std::move(pref), std::vector<double>(count, nbar));
}

std::string_view to_string(MovingKind kind) {
    return kind == MovingKind::CoLocated ? "co-located" : "mmp-spread";
}

MovingKind moving_kind_from_string(std::string_view name) {
    if (name == "co-located") return MovingKind::CoLocated;
    if (name == "mmp-spread") return MovingKind::MmpSpread;
    throw InvalidArgument("unknown moving detector kind '" + std::string(name) + "'");
}

DetectorLayout::DetectorLayout(std::vector<double> fixed_phases, std::size_t moving_count,
                               MovingKind moving_kind)
    : fixed_(std::move(fixed_phases)), moving_count_(moving_count), kind_(moving_kind) {
    if (order() == 0) throw InvalidArgument("detector layout needs at least one detector");
    if (kind_ == MovingKind::MmpSpread && moving_count_ != fixed_.size())
        throw InvalidArgument("mmp-spread layout needs equal moving and fixed detector counts");
    for (double p : fixed_)
        if (!(p >= 0.0 && p < kTwoPi))
            throw InvalidArgument("fixed detector phases must lie in [0, 2pi)");
}

DetectorLayout DetectorLayout::co_located(std::size_t m1, std::size_t m2) {
    return DetectorLayout(m2 == 0 ? std::vector<double>{} : magic_positions(m2), m1,
                          MovingKind::CoLocated);
}

DetectorLayout DetectorLayout::mmp_spread(std::size_t m) {
    return DetectorLayout(magic_positions(m), m, MovingKind::MmpSpread);
}

std::vector<double> DetectorLayout::moving_offsets() const {
    if (kind_ == MovingKind::CoLocated) return std::vector<double>(moving_count_, 0.0);
    return magic_positions(moving_count_);
}

std::vector<double> DetectorLayout::deltas(double delta1) const {
    std::vector<double> out;
    out.reserve(order());
    for (double off : moving_offsets()) out.push_back(reduce_phase(delta1 + off));
    out.insert(out.end(), fixed_.begin(), fixed_.end());
    return out;
}

std::vector<double> magic_positions(std::size_t m) {
    if (m == 0) throw InvalidArgument("magic_positions requires m >= 1");
    std::vector<double> out(m);
    for (std::size_t j = 0; j < m; ++j)
        out[j] = reduce_phase(kTwoPi * static_cast<double>(j) / static_cast<double>(m));
    return out;
}

std::vector<double> moving_magic_positions(double delta1, std::size_t m) {
    auto out = magic_positions(m);
    for (double& p : out) p = reduce_phase(p + delta1);
    return out;
}

double phase_from_angle(double k, double d, double theta) {
    if (!(k > 0.0)) throw InvalidArgument("wavenumber must be positive");
    if (!(d > 0.0)) throw InvalidArgument("source spacing must be positive");
    return k * d * std::sin(theta);
}

}  // namespace thermalnoon
