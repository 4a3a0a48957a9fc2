#include "thermalnoon/fockstate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "thermalnoon/errors.hpp"
#include "thermalnoon/geometry.hpp"

namespace thermalnoon {

namespace {

using cplx = std::complex<double>;

// Left multiplication by the field operator a1 + phase2 * a2.
Eigen::MatrixXcd apply_field(cplx phase2, const Eigen::MatrixXcd& rho, unsigned cutoff) {
    Eigen::MatrixXcd out = apply_left({1, 1}, rho, cutoff);
    out += phase2 * apply_left({2, 1}, rho, cutoff);
    return out;
}

// A rho A^dagger for A given as a left-multiplication map; rho must be Hermitian.
template <typename Op>
Eigen::MatrixXcd sandwich(const Op& op, const Eigen::MatrixXcd& rho) {
    const Eigen::MatrixXcd half = op(rho);
    return op(Eigen::MatrixXcd(half.adjoint()));
}

int noon_sign(unsigned m) { return (m % 2 == 1) ? 1 : -1; }

}  // namespace

Eigen::MatrixXcd apply_left(const ModeOperatorPower& op, const Eigen::MatrixXcd& rho,
                            unsigned cutoff) {
    if (op.mode != 1 && op.mode != 2) throw InvalidArgument("mode index must be 1 or 2");
    const Eigen::Index width = cutoff + 1;
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(rho.rows(), rho.cols());
    if (op.power > cutoff) return out;
    for (unsigned n1 = 0; n1 <= cutoff; ++n1)
        for (unsigned n2 = 0; n2 <= cutoff; ++n2) {
            const unsigned n = op.mode == 1 ? n1 : n2;
            if (n + op.power > cutoff) continue;
            double factor = 1.0;
            for (unsigned j = 1; j <= op.power; ++j) factor *= std::sqrt(static_cast<double>(n + j));
            const unsigned s1 = op.mode == 1 ? n1 + op.power : n1;
            const unsigned s2 = op.mode == 2 ? n2 + op.power : n2;
            out.row(n1 * width + n2) = factor * rho.row(s1 * width + s2);
        }
    return out;
}

double TwoModeDensityMatrix::hermiticity_error() const {
    return (entries - entries.adjoint()).cwiseAbs().maxCoeff();
}

double TwoModeDensityMatrix::min_eigenvalue() const {
    // Photon-number-conserving states are block diagonal in n1 + n2.
    const double scale = std::max(entries.cwiseAbs().maxCoeff(), 1e-300);
    bool blocked = true;
    for (unsigned a1 = 0; a1 <= cutoff && blocked; ++a1)
        for (unsigned a2 = 0; a2 <= cutoff && blocked; ++a2)
            for (unsigned b1 = 0; b1 <= cutoff && blocked; ++b1)
                for (unsigned b2 = 0; b2 <= cutoff; ++b2)
                    if (a1 + a2 != b1 + b2 &&
                        std::abs(element(a1, a2, b1, b2)) > 1e-15 * scale) {
                        blocked = false;
                        break;
                    }
    if (!blocked) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(entries, Eigen::EigenvaluesOnly);
        return es.eigenvalues().minCoeff();
    }
    double lowest = std::numeric_limits<double>::infinity();
    for (unsigned total = 0; total <= 2 * cutoff; ++total) {
        std::vector<Eigen::Index> idx;
        for (unsigned n1 = 0; n1 <= std::min(total, cutoff); ++n1)
            if (total - n1 <= cutoff) idx.push_back(index(n1, total - n1));
        Eigen::MatrixXcd block(idx.size(), idx.size());
        for (std::size_t r = 0; r < idx.size(); ++r)
            for (std::size_t c = 0; c < idx.size(); ++c) block(r, c) = entries(idx[r], idx[c]);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(block, Eigen::EigenvaluesOnly);
        lowest = std::min(lowest, es.eigenvalues().minCoeff());
    }
    return lowest;
}

TwoModeDensityMatrix TwoModeDensityMatrix::dephased() const {
    TwoModeDensityMatrix out = *this;
    out.entries = Eigen::MatrixXcd(entries.diagonal().asDiagonal());
    return out;
}

double TwoModeDensityMatrix::max_outside_support(unsigned m) const {
    double worst = 0.0;
    const int step = static_cast<int>(m);
    for (unsigned a1 = 0; a1 <= cutoff; ++a1)
        for (unsigned a2 = 0; a2 <= cutoff; ++a2)
            for (unsigned b1 = 0; b1 <= cutoff; ++b1)
                for (unsigned b2 = 0; b2 <= cutoff; ++b2) {
                    const int d1 = static_cast<int>(a1) - static_cast<int>(b1);
                    const int d2 = static_cast<int>(a2) - static_cast<int>(b2);
                    const bool allowed = (d1 == 0 && d2 == 0) ||
                                         (d1 == step && d2 == -step) ||
                                         (d1 == -step && d2 == step);
                    if (!allowed) worst = std::max(worst, std::abs(element(a1, a2, b1, b2)));
                }
    return worst;
}

TwoModeDensityMatrix thermal_two_mode(double nbar, unsigned cutoff) {
    if (!(nbar >= 0.0) || !std::isfinite(nbar))
        throw InvalidArgument("thermal_two_mode requires a finite nbar >= 0");
    if (cutoff == 0) throw InvalidArgument("thermal_two_mode requires cutoff >= 1");

    std::vector<double> p(cutoff + 1, 0.0);
    const double ratio = nbar / (1.0 + nbar);
    double w = 1.0 / (1.0 + nbar);
    double kept = 0.0;
    for (unsigned n = 0; n <= cutoff; ++n) {
        p[n] = w;
        kept += w;
        w *= ratio;
    }
    // Tail of the single-mode geometric distribution, in closed form.
    const double tail = std::pow(ratio, static_cast<double>(cutoff + 1));
    const double eps = 1.0 - (1.0 - tail) * (1.0 - tail);
    if (eps > 1e-6)
        throw TruncationError("cutoff " + std::to_string(cutoff) + " leaves " +
                              std::to_string(eps) + " of the thermal weight for nbar " +
                              std::to_string(nbar));

    TwoModeDensityMatrix rho;
    rho.cutoff = cutoff;
    rho.entries = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(rho.dim()),
                                         static_cast<Eigen::Index>(rho.dim()));
    for (unsigned n1 = 0; n1 <= cutoff; ++n1)
        for (unsigned n2 = 0; n2 <= cutoff; ++n2) {
            const auto i = rho.index(n1, n2);
            rho.entries(i, i) = p[n1] * p[n2] / (kept * kept);
        }
    rho.truncation_error = eps;
    rho.weight = 1.0;
    return rho;
}

unsigned default_cutoff(double nbar, unsigned m1, unsigned m2) {
    return std::max(30u, static_cast<unsigned>(std::ceil(10.0 * nbar)) + m1 + m2 + 10u);
}

double field_correlation(const TwoModeDensityMatrix& rho, std::span<const double> deltas) {
    if (deltas.size() > rho.cutoff)
        throw TruncationError("field_correlation: " + std::to_string(deltas.size()) +
                              " operators exceed cutoff " + std::to_string(rho.cutoff));
    auto op = [&](const Eigen::MatrixXcd& m) {
        Eigen::MatrixXcd w = m;
        for (double d : deltas) w = apply_field(std::polar(1.0, -d), w, rho.cutoff);
        return w;
    };
    return sandwich(op, rho.entries).trace().real();
}

TwoModeDensityMatrix project_magic(const TwoModeDensityMatrix& rho, unsigned m2) {
    if (m2 == 0) throw InvalidArgument("project_magic requires m2 >= 1");
    if (m2 > rho.cutoff)
        throw TruncationError("project_magic: m2 = " + std::to_string(m2) + " exceeds cutoff " +
                              std::to_string(rho.cutoff));
    const double sign = noon_sign(m2);
    auto op = [&](const Eigen::MatrixXcd& m) {
        Eigen::MatrixXcd w = apply_left({1, m2}, m, rho.cutoff);
        w += sign * apply_left({2, m2}, m, rho.cutoff);
        return w;
    };
    TwoModeDensityMatrix out;
    out.cutoff = rho.cutoff;
    out.entries = sandwich(op, rho.entries);
    out.weight = out.entries.trace().real();
    if (!(out.weight > 1e-300))
        throw ZeroProbabilityEvent("project_magic: detecting " + std::to_string(m2) +
                                   " photons at the magic positions has zero probability");
    out.entries /= out.weight;
    out.truncation_error = rho.truncation_error;
    return out;
}

double g_moving(const TwoModeDensityMatrix& rho, unsigned m1, double delta1) {
    if (m1 > rho.cutoff)
        throw TruncationError("g_moving: m1 = " + std::to_string(m1) + " exceeds cutoff " +
                              std::to_string(rho.cutoff));
    const std::vector<double> deltas(m1, delta1);
    return std::max(0.0, field_correlation(rho, deltas));
}

IsomorphismReport verify_isomorphism(double nbar, unsigned m1, unsigned m2, double delta1,
                                     unsigned cutoff) {
    if (m1 == 0 || m2 == 0) throw InvalidArgument("verify_isomorphism requires m1, m2 >= 1");
    if (m1 + m2 > cutoff)
        throw TruncationError("verify_isomorphism: m1 + m2 exceeds cutoff " +
                              std::to_string(cutoff));
    const auto rho = thermal_two_mode(nbar, cutoff);
    const auto magic = magic_positions(m2);

    std::vector<double> all(m1, delta1);
    all.insert(all.end(), magic.begin(), magic.end());

    IsomorphismReport r;
    r.lhs = field_correlation(rho, all);
    r.g_magic = field_correlation(rho, magic);
    r.rhs = g_moving(project_magic(rho, m2), m1, delta1) * r.g_magic;
    r.relative_gap = std::abs(r.lhs - r.rhs) / std::max(std::abs(r.lhs), 1e-300);
    r.truncation_error = rho.truncation_error;
    r.tolerance = std::max(1e-6, 10.0 * rho.truncation_error);
    r.ok = r.relative_gap < r.tolerance;
    return r;
}

double noon_overlap(const TwoModeDensityMatrix& rho, unsigned m2) {
    if (m2 == 0 || m2 > rho.cutoff)
        throw InvalidArgument("noon_overlap: m2 must lie in [1, cutoff]");
    const double sign = noon_sign(m2);
    const auto a = rho.index(m2, 0);
    const auto b = rho.index(0, m2);
    const cplx v = rho.entries(a, a) + rho.entries(b, b) +
                   sign * (rho.entries(a, b) + rho.entries(b, a));
    return 0.5 * v.real();
}

}  // namespace thermalnoon
