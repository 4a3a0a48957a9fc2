#include "thermalnoon/cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <random>

#include "thermalnoon/analytic.hpp"
#include "thermalnoon/errors.hpp"
#include "thermalnoon/fockstate.hpp"
#include "thermalnoon/geometry.hpp"
#include "thermalnoon/pathsum.hpp"

namespace thermalnoon::cli {

namespace {

constexpr double kOracleTolerance = 1e-9;
constexpr unsigned kMaxOracleOrder = 8;
constexpr std::size_t kOracleSamples = 25;
constexpr std::size_t kCrossOracleConfigs = 100;

json exact_integer(const BigInt& v) {
    if (v <= BigInt(std::numeric_limits<std::uint64_t>::max()))
        return v.convert_to<std::uint64_t>();
    return v.str();
}

std::string rational_string(const Rational& r) {
    return boost::multiprecision::numerator(r).str() + "/" +
           boost::multiprecision::denominator(r).str();
}

// Deterministic low-discrepancy scan phases in [0, 2pi).
std::vector<double> scan_phases(std::size_t count, double start) {
    constexpr double golden = 0.6180339887498949;
    std::vector<double> out(count);
    for (std::size_t k = 0; k < count; ++k) {
        const double u = start + golden * static_cast<double>(k + 1);
        out[k] = kTwoPi * (u - std::floor(u));
    }
    return out;
}

double relative_gap(double reference, double value) {
    return std::abs(reference - value) / std::max(std::abs(reference), 1e-300);
}

void require_pathsum_order(unsigned order) {
    if (order > kMaxPathsumOrder)
        throw CapacityExceeded("order " + std::to_string(order) +
                               " is too large for the path-sum route (max " +
                               std::to_string(kMaxPathsumOrder) +
                               "); use the permanent route instead");
}

}  // namespace

unsigned RunConfig::moving() const { return setup == 1 ? order / 2 : m1; }
unsigned RunConfig::fixed() const { return setup == 1 ? order / 2 : m2; }

void RunConfig::validate() const {
    if (command == "analytic" || command == "speckle") {
        if (setup != 1 && setup != 2) throw InvalidArgument("--setup must be 1 or 2");
        if (setup == 1 && (order < 2 || order % 2 != 0))
            throw InvalidArgument("setup 1 needs an even --order >= 2");
        if (setup == 2 && (m1 == 0 || m2 == 0))
            throw InvalidArgument("setup 2 needs --m1 >= 1 and --m2 >= 1");
        if (grid < 2) throw InvalidArgument("--grid needs at least 2 points");
    }
    if (command == "speckle") {
        if (!seed) throw InvalidArgument("speckle requires an explicit --seed");
        if (frames == 0) throw InvalidArgument("--frames must be positive");
        if (sources == 0) throw InvalidArgument("--sources must be positive");
        if (!(nbar > 0.0)) throw InvalidArgument("--nbar must be positive");
        if (workers == 0) throw InvalidArgument("--workers must be positive");
    }
    if (command == "oracle-check") {
        if (max_order == 0) throw InvalidArgument("--max-order must be positive");
        require_pathsum_order(max_order);
        if (max_order > kMaxOracleOrder)
            throw CapacityExceeded("oracle-check sweeps the path-sum route up to order " +
                                   std::to_string(kMaxOracleOrder) + ", got " +
                                   std::to_string(max_order) +
                                   "; use the permanent route for larger orders");
    }
    if (command == "fock") {
        if (m1 == 0 || m2 == 0) throw InvalidArgument("fock needs --m1 >= 1 and --m2 >= 1");
        if (!(nbar >= 0.0)) throw InvalidArgument("--nbar must be nonnegative");
    }
    if (command == "thresholds" && max_m2 < 2)
        throw InvalidArgument("--max-m2 must be at least 2");
}

std::string format_double(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

std::string write_csv(const std::vector<std::string>& header,
                      const std::vector<std::vector<double>>& columns) {
    std::string out;
    for (std::size_t c = 0; c < header.size(); ++c) {
        if (c) out += ',';
        out += header[c];
    }
    out += '\n';
    const std::size_t rows = columns.empty() ? 0 : columns.front().size();
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < columns.size(); ++c) {
            if (c) out += ',';
            out += format_double(columns[c][r]);
        }
        out += '\n';
    }
    return out;
}

std::string sidecar_path(const std::string& csv_path) {
    const auto slash = csv_path.find_last_of('/');
    const auto dot = csv_path.find_last_of('.');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
        return csv_path + ".json";
    return csv_path.substr(0, dot) + ".json";
}

RunOutput run_analytic(const RunConfig& config) {
    config.validate();
    const auto grid = uniform_grid(config.grid);
    CorrelationCurve curve;
    json sidecar;
    if (config.setup == 1) {
        curve = setup1_curve(config.order, grid);
        const unsigned half = config.order / 2;
        const BigInt sq = factorial_exact(half) * factorial_exact(half);
        const BigInt c1 = 2 * sq * (binomial_exact(config.order, half) + 1);
        const BigInt c2 = 2 * sq;
        const Rational v = setup1_visibility_exact(config.order);
        sidecar = {{"setup", 1},
                   {"order", config.order},
                   {"c1", exact_integer(c1)},
                   {"c2", exact_integer(c2)},
                   {"visibility", v.convert_to<double>()},
                   {"visibility_exact", rational_string(v)},
                   {"frequency", half},
                   {"parity_sign", 1}};
    } else {
        curve = setup2_curve(config.m1, config.m2, grid);
        const auto c = setup2_coeffs(config.m1, config.m2);
        const Rational v = c.visibility_exact();
        sidecar = {{"setup", 2},
                   {"m1", config.m1},
                   {"m2", config.m2},
                   {"c1", exact_integer(c.c1)},
                   {"c2", exact_integer(c.c2)},
                   {"visibility", v.convert_to<double>()},
                   {"visibility_exact", rational_string(v)},
                   {"frequency", c.c2 == 0 ? 0u : config.m2},
                   {"parity_sign", c.parity_sign}};
    }
    const auto norm = curve.normalized_copy();
    RunOutput out;
    out.csv = write_csv({"delta1", "G", "g_norm"}, {curve.grid, curve.values, norm.values});
    out.report = std::move(sidecar);
    return out;
}

RunOutput run_oracle_check(const RunConfig& config) {
    config.validate();
    const auto two = SourceArray::equidistant(2);
    json checks = json::array();
    double worst = 0.0;

    for (unsigned order = 2; order <= config.max_order; order += 2) {
        const auto layout = DetectorLayout::mmp_spread(order / 2);
        double gap = 0.0;
        for (double d : scan_phases(kOracleSamples, 0.05 * order)) {
            const auto deltas = layout.deltas(d);
            gap = std::max(gap, relative_gap(setup1_g(order, d), correlation_pathsum(two, deltas)));
        }
        worst = std::max(worst, gap);
        checks.push_back({{"route", "setup1"},
                          {"order", order},
                          {"samples", kOracleSamples},
                          {"hbt", order == 2},
                          {"closed_form", order == 2 ? "2(3+cos d1)" : "setup1_g"},
                          {"max_relative_gap", gap}});
    }
    for (unsigned total = 2; total <= config.max_order; ++total)
        for (unsigned m2 = 1; m2 < total; ++m2) {
            const unsigned m1 = total - m2;
            const auto layout = DetectorLayout::co_located(m1, m2);
            double gap = 0.0;
            for (double d : scan_phases(kOracleSamples, 0.01 * (m1 + 7 * m2))) {
                const auto deltas = layout.deltas(d);
                gap = std::max(gap,
                               relative_gap(setup2_g(m1, m2, d), correlation_pathsum(two, deltas)));
            }
            worst = std::max(worst, gap);
            checks.push_back({{"route", "setup2"},
                              {"m1", m1},
                              {"m2", m2},
                              {"samples", kOracleSamples},
                              {"max_relative_gap", gap}});
        }

    // Path sum against the permanent on pseudo-random configurations.
    std::mt19937_64 rng(0x5EEDC0FFEEull);
    auto uniform = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    const double nbar_choices[] = {0.5, 1.0, 2.0};
    const unsigned cross_max = std::min(config.max_order, 6u);
    double cross = 0.0;
    for (std::size_t i = 0; i < kCrossOracleConfigs; ++i) {
        const std::size_t k = 1 + rng() % 3;
        const unsigned m = 1 + static_cast<unsigned>(rng() % cross_max);
        std::vector<double> nbar(k);
        for (double& n : nbar) n = nbar_choices[rng() % 3];
        std::vector<int> pref(k);
        for (std::size_t l = 0; l < k; ++l) pref[l] = static_cast<int>(l);
        const SourceArray src(pref, nbar);
        std::vector<double> deltas(m);
        for (double& d : deltas) d = kTwoPi * uniform();
        cross = std::max(cross, relative_gap(correlation_permanent(src, deltas),
                                             correlation_pathsum(src, deltas)));
    }
    worst = std::max(worst, cross);

    RunOutput out;
    out.ok = worst < kOracleTolerance;
    out.report = {{"max_order", config.max_order},
                  {"tolerance", kOracleTolerance},
                  {"checks", checks},
                  {"cross_oracle", {{"configs", kCrossOracleConfigs},
                                    {"max_order", cross_max},
                                    {"max_relative_gap", cross}}},
                  {"max_relative_gap", worst},
                  {"ok", out.ok}};
    return out;
}

SpeckleConfig speckle_config(const RunConfig& config) {
    config.validate();
    SpeckleConfig s;
    s.sources = SourceArray::equidistant(config.sources, config.nbar);
    s.layout = config.setup == 1 ? DetectorLayout::mmp_spread(config.order / 2)
                                 : DetectorLayout::co_located(config.m1, config.m2);
    s.frames = config.frames;
    s.seed = *config.seed;
    s.grid = uniform_grid(config.grid);
    s.slit_ratio = config.slit_ratio;
    s.workers = config.workers;
    s.batches = config.batches;
    s.shifts = config.shifts;
    return s;
}

json to_json(const SpeckleConfig& config) {
    json src = {{"prefactors", config.sources.prefactors()}, {"nbar", config.sources.nbar()}};
    if (config.sources.spacing_d()) src["spacing_d"] = *config.sources.spacing_d();
    return {{"sources", src},
            {"layout", {{"kind", std::string(to_string(config.layout.moving_kind()))},
                        {"m1", config.layout.m1()},
                        {"m2", config.layout.m2()},
                        {"fixed_phases", config.layout.fixed_phases()}}},
            {"frames", config.frames},
            {"seed", config.seed},
            {"grid", config.grid},
            {"slit_ratio", config.slit_ratio},
            {"workers", config.workers},
            {"batches", config.batches},
            {"shifts", config.shifts}};
}

SpeckleConfig speckle_config_from_json(const json& doc) {
    try {
        SpeckleConfig s;
        if (doc.contains("sources")) {
            const auto& src = doc.at("sources");
            std::vector<int> pref;
            if (src.contains("prefactors")) {
                pref = src.at("prefactors").get<std::vector<int>>();
            } else {
                const auto count = src.value("count", std::size_t{2});
                for (std::size_t l = 0; l < count; ++l) pref.push_back(static_cast<int>(l));
            }
            std::vector<double> nbar;
            if (src.contains("nbar")) {
                if (src.at("nbar").is_array())
                    nbar = src.at("nbar").get<std::vector<double>>();
                else
                    nbar.assign(pref.size(), src.at("nbar").get<double>());
            }
            std::optional<double> spacing;
            if (src.contains("spacing_d")) spacing = src.at("spacing_d").get<double>();
            s.sources = SourceArray(pref, nbar, spacing);
        }
        if (doc.contains("layout")) {
            const auto& lay = doc.at("layout");
            const auto kind = moving_kind_from_string(lay.value("kind", std::string("co-located")));
            const auto m1 = lay.at("m1").get<std::size_t>();
            if (lay.contains("fixed_phases")) {
                s.layout = DetectorLayout(lay.at("fixed_phases").get<std::vector<double>>(), m1, kind);
            } else {
                const auto m2 = lay.at("m2").get<std::size_t>();
                s.layout = DetectorLayout(m2 == 0 ? std::vector<double>{} : magic_positions(m2),
                                          m1, kind);
            }
        }
        if (!doc.contains("seed")) throw InvalidArgument("speckle config requires an explicit seed");
        s.seed = doc.at("seed").get<std::uint64_t>();
        s.frames = doc.value("frames", std::uint64_t{1'000'000});
        if (doc.contains("grid")) {
            const auto& g = doc.at("grid");
            s.grid = g.is_array() ? g.get<std::vector<double>>()
                                  : uniform_grid(g.get<std::size_t>());
        }
        s.slit_ratio = doc.value("slit_ratio", 0.0);
        s.workers = doc.value("workers", 1u);
        s.batches = doc.value("batches", kDefaultBatches);
        s.shifts = doc.value("shifts", std::size_t{0});
        s.validate();
        return s;
    } catch (const json::exception& e) {
        throw InvalidArgument(std::string("malformed speckle config: ") + e.what());
    }
}

RunOutput run_speckle(const SpeckleConfig& speckle) {
    const auto curve = simulate_curve(speckle);
    const bool spread = speckle.layout.moving_kind() == MovingKind::MmpSpread;
    const unsigned frequency = static_cast<unsigned>(
        std::max<std::size_t>(1, spread ? speckle.layout.m1() : speckle.layout.m2()));
    const auto fit = fit_cosine(curve, frequency);
    const auto norm = curve.normalized_copy();

    RunOutput out;
    out.csv = write_csv({"delta1", "g_norm", "stderr"},
                        {norm.grid, norm.values, *norm.stderr_values});
    out.report = {{"A", fit.offset},
                  {"B", fit.amplitude},
                  {"visibility", fit.visibility},
                  {"stderr_visibility", fit.stderr_visibility},
                  {"stderr_B", fit.stderr_amplitude},
                  {"frequency", fit.dominant_frequency},
                  {"fit_frequency", fit.fit_frequency},
                  {"parity_ok", fit.parity_ok},
                  {"seed", speckle.seed},
                  {"frames", speckle.frames},
                  {"shifts", speckle.effective_shifts()}};

    // Closed-form reference for two equal point sources.
    const auto& src = speckle.sources;
    const bool two_equal = src.size() == 2 && src.prefactors()[1] == 1 &&
                           src.nbar()[0] == src.nbar()[1] && speckle.slit_ratio == 0.0;
    const auto& lay = speckle.layout;
    const bool magic_fixed = lay.m2() > 0 && lay.fixed_phases() == magic_positions(lay.m2());
    if (two_equal && magic_fixed && lay.m1() > 0) {
        out.report["analytic_visibility"] =
            spread ? setup1_visibility(static_cast<unsigned>(lay.order()))
                   : setup2_visibility(static_cast<unsigned>(lay.m1()),
                                       static_cast<unsigned>(lay.m2()));
    }
    return out;
}

RunOutput run_fock(const RunConfig& config) {
    config.validate();
    const unsigned cutoff = config.cutoff.value_or(default_cutoff(config.nbar, config.m1, config.m2));
    const auto report = verify_isomorphism(config.nbar, config.m1, config.m2, config.delta1, cutoff);
    const auto rho = thermal_two_mode(config.nbar, cutoff);
    const auto projected = project_magic(rho, config.m2);
    const double support = projected.max_outside_support(config.m2);

    RunOutput out;
    out.ok = report.ok && support <= 1e-12;
    out.report = {{"nbar", config.nbar},
                  {"m1", config.m1},
                  {"m2", config.m2},
                  {"delta1", config.delta1},
                  {"cutoff", cutoff},
                  {"isomorphism", {{"lhs", report.lhs},
                                   {"rhs", report.rhs},
                                   {"g_magic", report.g_magic},
                                   {"relative_gap", report.relative_gap},
                                   {"tolerance", report.tolerance},
                                   {"ok", report.ok}}},
                  {"truncation_error", report.truncation_error},
                  {"support_violation", support},
                  {"hermiticity_error", projected.hermiticity_error()},
                  {"noon_overlap", noon_overlap(projected, config.m2)},
                  {"noon_overlap_dephased", noon_overlap(projected.dephased(), config.m2)},
                  {"ok", out.ok}};
    return out;
}

RunOutput run_thresholds(const RunConfig& config) {
    config.validate();
    json rows = json::array();
    for (unsigned m2 = 2; m2 <= config.max_m2; ++m2) {
        const unsigned m1 = crossover_threshold(m2);
        rows.push_back({{"m2", m2},
                        {"m1_threshold", m1},
                        {"setup1_visibility", setup1_visibility(2 * m2)},
                        {"setup2_visibility", setup2_visibility(m1, m2)},
                        {"setup2_visibility_below", setup2_visibility(m1 - 1, m2)}});
    }
    RunOutput out;
    out.report = {{"thresholds", rows}};
    return out;
}

int emit(const RunOutput& out, const std::string& path, std::ostream& stdout_stream,
         std::ostream& stderr_stream) {
    const std::string doc = out.report.dump(2) + "\n";
    if (path.empty()) {
        if (!out.csv.empty()) {
            stdout_stream << out.csv;
            stderr_stream << doc;
        } else {
            stdout_stream << doc;
        }
    } else {
        auto write = [](const std::string& p, const std::string& body) {
            std::ofstream f(p, std::ios::binary);
            if (!f) throw std::runtime_error("cannot open '" + p + "' for writing");
            f << body;
            if (!f) throw std::runtime_error("failed writing '" + p + "'");
        };
        if (!out.csv.empty()) {
            write(path, out.csv);
            write(sidecar_path(path), doc);
        } else {
            write(path, doc);
        }
    }
    return out.ok ? 0 : 1;
}

}  // namespace thermalnoon::cli
