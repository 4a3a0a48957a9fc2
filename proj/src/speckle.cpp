#include "thermalnoon/speckle.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

#include "thermalnoon/errors.hpp"
#include "thermalnoon/philox.hpp"

namespace thermalnoon {

namespace {

using cplx = std::complex<double>;

double sinc(double x) { return std::abs(x) < 1e-8 ? 1.0 - x * x / 6.0 : std::sin(x) / x; }

// Field phasors env(delta) * exp(-i alpha_l delta) for one detector position.
std::vector<cplx> phasors(const SourceArray& sources, double delta, double slit_ratio) {
    const double env = slit_ratio > 0.0 ? sinc(0.5 * delta * slit_ratio) : 1.0;
    std::vector<cplx> out(sources.size());
    for (std::size_t l = 0; l < sources.size(); ++l)
        out[l] = std::polar(env, -sources.prefactors()[l] * delta);
    return out;
}

double intensity(const cplx* phasor, const cplx* amp, std::size_t k) {
    cplx e{0.0, 0.0};
    for (std::size_t l = 0; l < k; ++l) e += phasor[l] * amp[l];
    return std::norm(e);
}

double ipow(double x, std::size_t n) {
    double r = 1.0;
    for (; n > 0; n >>= 1) {
        if (n & 1) r *= x;
        x *= x;
    }
    return r;
}

// Precomputed geometry shared read-only by all workers.
struct Kernel {
    std::size_t sources = 0;
    std::size_t points = 0;
    std::size_t moving = 0;
    bool co_located = true;
    std::vector<cplx> fixed;    // [fixed detector][source]
    std::vector<cplx> scanned;  // [grid point][moving detector or 1][source]
    std::vector<double> amp_scale;
    std::vector<cplx> shift_phasors;  // [shift][source], exp(i alpha_l theta_s)
    std::size_t shifts = 1;
    Philox4x32::Key key{};

    void draw(std::uint64_t frame, std::vector<cplx>& amps) const {
        for (std::size_t l = 0; l < sources; ++l) {
            const Philox4x32::Counter ctr{static_cast<std::uint32_t>(frame),
                                          static_cast<std::uint32_t>(frame >> 32),
                                          static_cast<std::uint32_t>(l), 0u};
            const auto r = Philox4x32::block(ctr, key);
            const double u1 = Philox4x32::to_unit_open_closed(r[0], r[1]);
            const double u2 = Philox4x32::to_unit_open_closed(r[2], r[3]);
            // circular complex Gaussian with <|a|^2> = nbar
            amps[l] = std::polar(amp_scale[l] * std::sqrt(-std::log(u1)), kTwoPi * u2);
        }
    }

    void accumulate(std::uint64_t begin, std::uint64_t end, std::vector<long double>& sums) const {
        std::vector<cplx> drawn(sources);
        std::vector<cplx> amps(sources);
        std::vector<double> frame(points);
        const std::size_t fixed_count = fixed.size() / sources;
        const std::size_t per_point = co_located ? 1 : moving;
        const double shift_weight = 1.0 / static_cast<double>(shifts);
        for (std::uint64_t f = begin; f < end; ++f) {
            draw(f, drawn);
            std::fill(frame.begin(), frame.end(), 0.0);
            for (std::size_t s = 0; s < shifts; ++s) {
                // Shifting every detector by theta multiplies a_l by exp(i alpha_l theta).
                for (std::size_t l = 0; l < sources; ++l)
                    amps[l] = drawn[l] * shift_phasors[s * sources + l];
                double fixed_product = 1.0;
                for (std::size_t j = 0; j < fixed_count; ++j)
                    fixed_product *= intensity(&fixed[j * sources], amps.data(), sources);
                for (std::size_t g = 0; g < points; ++g) {
                    const cplx* row = &scanned[g * per_point * sources];
                    double prod = fixed_product;
                    if (co_located) {
                        prod *= ipow(intensity(row, amps.data(), sources), moving);
                    } else {
                        for (std::size_t j = 0; j < moving; ++j)
                            prod *= intensity(row + j * sources, amps.data(), sources);
                    }
                    frame[g] += prod;
                }
            }
            for (std::size_t g = 0; g < points; ++g) sums[g] += frame[g] * shift_weight;
        }
    }
};

}  // namespace

void SpeckleConfig::validate() const {
    if (frames == 0) throw InvalidArgument("speckle simulation needs frames >= 1");
    if (grid.size() < 2) throw InvalidArgument("speckle grid needs at least two points");
    if (workers == 0) throw InvalidArgument("speckle simulation needs workers >= 1");
    if (batches == 0) throw InvalidArgument("speckle simulation needs batches >= 1");
    if (!(slit_ratio >= 0.0 && slit_ratio < 1.0))
        throw InvalidArgument("slit ratio a/d must lie in [0, 1)");
}

std::size_t SpeckleConfig::effective_shifts() const {
    if (shifts > 0) return shifts;
    // A frame's product of intensities is a trigonometric polynomial of degree
    // at most M * max(alpha) in the global phase; one more node integrates it.
    return layout.order() * static_cast<std::size_t>(sources.max_prefactor()) + 1;
}

CorrelationCurve simulate_curve(const SpeckleConfig& config) {
    config.validate();

    Kernel kernel;
    kernel.sources = config.sources.size();
    kernel.points = config.grid.size();
    kernel.moving = config.layout.m1();
    kernel.co_located = config.layout.moving_kind() == MovingKind::CoLocated;
    kernel.key = Philox4x32::key_from_seed(config.seed);
    for (double nbar : config.sources.nbar()) kernel.amp_scale.push_back(std::sqrt(nbar));
    kernel.shifts = config.effective_shifts();
    for (std::size_t s = 0; s < kernel.shifts; ++s) {
        const double theta = kTwoPi * static_cast<double>(s) / static_cast<double>(kernel.shifts);
        for (int alpha : config.sources.prefactors())
            kernel.shift_phasors.push_back(std::polar(1.0, alpha * theta));
    }
    for (double p : config.layout.fixed_phases()) {
        const auto row = phasors(config.sources, p, config.slit_ratio);
        kernel.fixed.insert(kernel.fixed.end(), row.begin(), row.end());
    }
    const auto offsets = config.layout.moving_offsets();
    for (double d : config.grid) {
        if (kernel.co_located) {
            const auto row = phasors(config.sources, d, config.slit_ratio);
            kernel.scanned.insert(kernel.scanned.end(), row.begin(), row.end());
        } else {
            for (double off : offsets) {
                const auto row = phasors(config.sources, d + off, config.slit_ratio);
                kernel.scanned.insert(kernel.scanned.end(), row.begin(), row.end());
            }
        }
    }

    const std::size_t batches =
        static_cast<std::size_t>(std::min<std::uint64_t>(config.batches, config.frames));
    std::vector<std::vector<long double>> batch_sums(
        batches, std::vector<long double>(kernel.points, 0.0L));
    auto batch_begin = [&](std::size_t b) { return config.frames * b / batches; };

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        try {
            for (std::size_t b = next++; b < batches; b = next++)
                kernel.accumulate(batch_begin(b), batch_begin(b + 1), batch_sums[b]);
        } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
        }
    };
    const unsigned threads = std::min<unsigned>(config.workers, static_cast<unsigned>(batches));
    if (threads <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
    }
    if (failure) std::rethrow_exception(failure);

    CorrelationCurve curve;
    curve.grid = config.grid;
    curve.values.assign(kernel.points, 0.0);
    curve.batch_values.assign(batches, std::vector<double>(kernel.points, 0.0));
    std::vector<double> err(kernel.points, 0.0);
    for (std::size_t g = 0; g < kernel.points; ++g) {
        long double total = 0.0L;
        long double mean_of_means = 0.0L;
        for (std::size_t b = 0; b < batches; ++b) {
            total += batch_sums[b][g];
            const auto n = static_cast<long double>(batch_begin(b + 1) - batch_begin(b));
            const long double m = batch_sums[b][g] / n;
            curve.batch_values[b][g] = static_cast<double>(m);
            mean_of_means += m;
        }
        const long double mean = total / static_cast<long double>(config.frames);
        if (!std::isfinite(static_cast<double>(mean)))
            throw AccumulatorOverflow("speckle accumulator overflowed at grid point " +
                                      std::to_string(g));
        curve.values[g] = static_cast<double>(mean);
        if (batches > 1) {
            mean_of_means /= static_cast<long double>(batches);
            long double ss = 0.0L;
            for (std::size_t b = 0; b < batches; ++b) {
                const long double d = curve.batch_values[b][g] - mean_of_means;
                ss += d * d;
            }
            err[g] = static_cast<double>(
                std::sqrt(ss / static_cast<long double>((batches - 1) * batches)));
        }
    }
    curve.stderr_values = std::move(err);
    curve.order = config.layout.order();
    curve.m1 = config.layout.m1();
    curve.m2 = config.layout.m2();
    curve.layout = std::string(to_string(config.layout.moving_kind()));
    curve.provenance = "speckle";
    curve.seed = config.seed;
    curve.frames = config.frames;
    curve.max_harmonic =
        config.layout.m1() * static_cast<std::size_t>(config.sources.max_prefactor());
    curve.validate();
    return curve;
}

ConvergenceReport convergence_probe(const SpeckleConfig& config, std::uint64_t frames_small,
                                    std::uint64_t frames_large) {
    if (frames_small == 0 || frames_large < 4 * frames_small)
        throw InvalidArgument("convergence_probe needs frames_large >= 4 * frames_small >= 4");
    const unsigned frequency = static_cast<unsigned>(
        std::max<std::size_t>(1, config.layout.moving_kind() == MovingKind::MmpSpread
                                     ? config.layout.m1()
                                     : config.layout.m2()));
    SpeckleConfig run = config;
    run.frames = frames_small;
    const auto small = fit_cosine(simulate_curve(run), frequency);
    run.frames = frames_large;
    const auto large = fit_cosine(simulate_curve(run), frequency);

    ConvergenceReport r;
    r.frames_small = frames_small;
    r.frames_large = frames_large;
    r.stderr_small = small.stderr_visibility;
    r.stderr_large = large.stderr_visibility;
    r.ratio = r.stderr_small / r.stderr_large;
    r.expected = std::sqrt(static_cast<double>(frames_large) / static_cast<double>(frames_small));
    r.consistent = r.ratio > 0.5 * r.expected && r.ratio < 2.0 * r.expected;
    return r;
}

}  // namespace thermalnoon
