#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "thermalnoon/curve.hpp"
#include "thermalnoon/speckle.hpp"

namespace thermalnoon::cli {

using json = nlohmann::json;

/// Everything a subcommand needs, collected from flags and config files.
struct RunConfig {
    std::string command;
    unsigned setup = 2;
    unsigned order = 0;           // setup 1 only
    unsigned m1 = 0;
    unsigned m2 = 0;
    unsigned sources = 2;
    double nbar = 1.0;
    std::size_t grid = kDefaultGridPoints;
    std::uint64_t frames = 1'000'000;
    std::optional<std::uint64_t> seed;
    unsigned workers = 1;
    std::size_t batches = kDefaultBatches;
    std::size_t shifts = 0;  // 0: automatic
    double slit_ratio = 0.0;
    unsigned max_order = 6;
    double delta1 = 1.0;
    std::optional<unsigned> cutoff;
    unsigned max_m2 = 5;
    std::string out;              // empty: stdout

    /// Moving/fixed detector counts implied by setup and order.
    unsigned moving() const;
    unsigned fixed() const;
    void validate() const;
};

/// Outputs of a run: the CSV body (possibly empty) and the JSON document.
struct RunOutput {
    std::string csv;
    json report;
    bool ok = true;
};

RunOutput run_analytic(const RunConfig& config);
RunOutput run_oracle_check(const RunConfig& config);
RunOutput run_speckle(const SpeckleConfig& speckle);
RunOutput run_fock(const RunConfig& config);
RunOutput run_thresholds(const RunConfig& config);

/// Speckle settings derived from flags (sources, layout, grid, frames, ...).
SpeckleConfig speckle_config(const RunConfig& config);
SpeckleConfig speckle_config_from_json(const json& doc);
json to_json(const SpeckleConfig& config);

/// Locale-independent shortest round-trip decimal representation.
std::string format_double(double value);

/// CSV with the given columns; each row newline-terminated.
std::string write_csv(const std::vector<std::string>& header,
                      const std::vector<std::vector<double>>& columns);

/// "curve.csv" -> "curve.json"; paths without extension get ".json" appended.
std::string sidecar_path(const std::string& csv_path);

/// Writes `out` to config.out (CSV) and its sidecar (JSON), or to the given
/// streams when no path is set. Returns the process exit status.
int emit(const RunOutput& out, const std::string& path, std::ostream& stdout_stream,
         std::ostream& stderr_stream);

}  // namespace thermalnoon::cli
