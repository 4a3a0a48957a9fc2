#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include <Eigen/Dense>

#include "thermalnoon/errors.hpp"
#include "thermalnoon/geometry.hpp"
#include "thermalnoon/speckle.hpp"

namespace thermalnoon {

namespace {

constexpr std::size_t kDefaultHarmonicScan = 32;

struct Estimate {
    double offset = 0.0;
    double amplitude = 0.0;
    std::vector<double> cos_coef;  // index k-1
    std::vector<double> sin_coef;
};

std::size_t distinct_phases(const std::vector<double>& grid) {
    std::vector<double> r;
    r.reserve(grid.size());
    for (double g : grid) r.push_back(reduce_phase(g));
    std::sort(r.begin(), r.end());
    std::size_t count = 0;
    for (std::size_t i = 0; i < r.size(); ++i)
        if (i == 0 || r[i] - r[i - 1] > 1e-9) ++count;
    if (count > 1 && kTwoPi - r.back() + r.front() <= 1e-9) --count;
    return count;
}

class Fitter {
public:
    Fitter(const std::vector<double>& grid, unsigned frequency, std::size_t harmonics)
        : harmonics_(harmonics) {
        const auto n = static_cast<Eigen::Index>(grid.size());
        Eigen::MatrixXd cosine(n, 2);
        Eigen::MatrixXd fourier(n, static_cast<Eigen::Index>(2 * harmonics + 1));
        for (Eigen::Index i = 0; i < n; ++i) {
            const double d = grid[static_cast<std::size_t>(i)];
            cosine(i, 0) = 1.0;
            cosine(i, 1) = std::cos(frequency * d);
            fourier(i, 0) = 1.0;
            for (std::size_t k = 1; k <= harmonics; ++k) {
                fourier(i, static_cast<Eigen::Index>(2 * k - 1)) = std::cos(k * d);
                fourier(i, static_cast<Eigen::Index>(2 * k)) = std::sin(k * d);
            }
        }
        cosine_qr_.compute(cosine);
        fourier_qr_.compute(fourier);
    }

    Estimate operator()(const std::vector<double>& values) const {
        const Eigen::Map<const Eigen::VectorXd> y(values.data(),
                                                  static_cast<Eigen::Index>(values.size()));
        Estimate e;
        const Eigen::VectorXd ab = cosine_qr_.solve(y);
        e.offset = ab(0);
        e.amplitude = ab(1);
        if (harmonics_ > 0) {
            const Eigen::VectorXd c = fourier_qr_.solve(y);
            for (std::size_t k = 1; k <= harmonics_; ++k) {
                e.cos_coef.push_back(c(static_cast<Eigen::Index>(2 * k - 1)));
                e.sin_coef.push_back(c(static_cast<Eigen::Index>(2 * k)));
            }
        }
        return e;
    }

private:
    std::size_t harmonics_;
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> cosine_qr_;
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> fourier_qr_;
};

double sample_sd(const std::vector<double>& xs) {
    if (xs.size() < 2) return 0.0;
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

double visibility_of(const Estimate& e) {
    return e.offset > 0.0 ? std::abs(e.amplitude) / e.offset : 0.0;
}

}  // namespace

bool Harmonic::significant(double sigmas) const {
    return std::abs(cos_coef) > sigmas * stderr_cos || std::abs(sin_coef) > sigmas * stderr_sin;
}

int expected_parity(const CorrelationCurve& curve) {
    // Moving magic positions contribute the same (-1)^(m-1) as the fixed set,
    // so the two signs cancel.
    if (curve.layout == to_string(MovingKind::MmpSpread)) return 1;
    return (curve.m2 % 2 == 1) ? 1 : -1;
}

FitResult fit_cosine(const CorrelationCurve& curve, unsigned frequency, std::size_t resamples) {
    curve.validate();
    if (frequency == 0) throw InvalidArgument("fit_cosine requires a positive frequency");
    const auto [lo, hi] = std::minmax_element(curve.grid.begin(), curve.grid.end());
    const double period = kTwoPi / frequency;
    if (*hi - *lo < period - 1e-9)
        throw InvalidArgument("fit_cosine: grid spans " + std::to_string(*hi - *lo) +
                              " rad, less than one period " + std::to_string(period));
    const std::size_t distinct = distinct_phases(curve.grid);
    if (distinct < 3) throw InvalidArgument("fit_cosine needs at least three distinct phases");

    std::size_t harmonics = curve.max_harmonic > 0 ? curve.max_harmonic : kDefaultHarmonicScan;
    harmonics = std::min(harmonics, (distinct - 1) / 2);

    const Fitter fitter(curve.grid, frequency, harmonics);
    const Estimate point = fitter(curve.values);

    FitResult out;
    out.offset = point.offset;
    out.amplitude = point.amplitude;
    out.fit_frequency = frequency;
    out.visibility = visibility_of(point);
    out.expected_parity = expected_parity(curve);
    out.parity_ok = (point.amplitude > 0.0 ? 1 : -1) == out.expected_parity;

    double strongest = 0.0;
    for (std::size_t k = 1; k <= harmonics; ++k) {
        Harmonic h;
        h.k = static_cast<unsigned>(k);
        h.cos_coef = point.cos_coef[k - 1];
        h.sin_coef = point.sin_coef[k - 1];
        h.amplitude = std::hypot(h.cos_coef, h.sin_coef);
        if (h.amplitude > strongest) {
            strongest = h.amplitude;
            out.dominant_frequency = h.k;
        }
        out.harmonics.push_back(h);
    }
    if (strongest <= 1e-12 * std::abs(point.offset)) out.dominant_frequency = 0;

    const std::size_t batches = curve.batch_values.size();
    if (batches >= 2 && resamples >= 2) {
        std::mt19937_64 rng(curve.seed ^ 0xB5297A4D3F84D5B5ull);
        std::vector<double> offsets, amps, vis;
        std::vector<std::vector<double>> cs(harmonics), ss(harmonics);
        std::vector<double> mean(curve.values.size());
        for (std::size_t r = 0; r < resamples; ++r) {
            std::fill(mean.begin(), mean.end(), 0.0);
            for (std::size_t b = 0; b < batches; ++b) {
                const auto& pick = curve.batch_values[rng() % batches];
                for (std::size_t i = 0; i < mean.size(); ++i) mean[i] += pick[i];
            }
            for (double& m : mean) m /= static_cast<double>(batches);
            const Estimate e = fitter(mean);
            offsets.push_back(e.offset);
            amps.push_back(e.amplitude);
            vis.push_back(visibility_of(e));
            for (std::size_t k = 0; k < harmonics; ++k) {
                cs[k].push_back(e.cos_coef[k]);
                ss[k].push_back(e.sin_coef[k]);
            }
        }
        out.stderr_offset = sample_sd(offsets);
        out.stderr_amplitude = sample_sd(amps);
        out.stderr_visibility = sample_sd(vis);
        for (std::size_t k = 0; k < harmonics; ++k) {
            out.harmonics[k].stderr_cos = sample_sd(cs[k]);
            out.harmonics[k].stderr_sin = sample_sd(ss[k]);
        }
    }
    return out;
}

}  // namespace thermalnoon
