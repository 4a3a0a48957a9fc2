#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "thermalnoon/cli.hpp"
#include "thermalnoon/errors.hpp"

namespace tc = thermalnoon::cli;

namespace {

void add_layout_flags(CLI::App* cmd, tc::RunConfig& cfg) {
    cmd->add_option("--setup", cfg.setup, "1: moving magic positions, 2: co-located moving detectors")
        ->check(CLI::IsMember({1u, 2u}));
    cmd->add_option("--order", cfg.order, "total order M (setup 1)");
    cmd->add_option("--m1", cfg.m1, "moving detectors (setup 2)");
    cmd->add_option("--m2", cfg.m2, "fixed detectors at the magic positions (setup 2)");
    cmd->add_option("--grid", cfg.grid, "number of delta1 samples over [0, 2pi]");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Higher-order intensity correlations of thermal sources at magic detector positions"};
    app.require_subcommand(1);

    tc::RunConfig cfg;
    std::string out;
    std::string config_path;
    std::uint64_t seed = 0;

    auto* analytic = app.add_subcommand("analytic", "closed-form curve and visibility");
    add_layout_flags(analytic, cfg);
    analytic->add_option("--out", out, "CSV path; the JSON sidecar goes next to it");

    auto* oracle = app.add_subcommand("oracle-check", "closed forms vs path sum vs permanent");
    oracle->add_option("--max-order", cfg.max_order, "highest order swept (<= 8)");
    oracle->add_option("--out", out, "JSON report path");

    auto* speckle = app.add_subcommand("speckle", "Monte Carlo pseudothermal simulation");
    add_layout_flags(speckle, cfg);
    speckle->add_option("--frames", cfg.frames, "number of independent speckle frames");
    auto* seed_opt = speckle->add_option("--seed", seed, "master seed (required)");
    speckle->add_option("--sources", cfg.sources, "number of equidistant sources");
    speckle->add_option("--nbar", cfg.nbar, "mean photon number per source");
    speckle->add_option("--workers", cfg.workers, "worker threads");
    speckle->add_option("--batches", cfg.batches, "batches for error estimates");
    speckle->add_option("--shifts", cfg.shifts, "global layout offsets read per frame (0: automatic)");
    speckle->add_option("--slit-ratio", cfg.slit_ratio, "slit width over spacing, a/d");
    speckle->add_option("--config", config_path, "JSON speckle configuration")
        ->check(CLI::ExistingFile);
    speckle->add_option("--out", out, "CSV path; the JSON fit goes next to it");

    auto* fock = app.add_subcommand("fock", "projected two-source state and isomorphism check");
    fock->add_option("--nbar", cfg.nbar, "mean photon number per source");
    fock->add_option("--m1", cfg.m1, "moving detectors");
    fock->add_option("--m2", cfg.m2, "fixed detectors at the magic positions");
    fock->add_option("--delta1", cfg.delta1, "scan phase");
    fock->add_option("--cutoff", cfg.cutoff, "Fock cutoff per mode");
    fock->add_option("--out", out, "JSON report path");

    auto* thresholds = app.add_subcommand("thresholds", "moving detectors needed to beat setup 1");
    thresholds->add_option("--max-m2", cfg.max_m2, "largest m2 listed");
    thresholds->add_option("--out", out, "JSON report path");

    CLI11_PARSE(app, argc, argv);

    try {
        tc::RunOutput result;
        if (analytic->parsed()) {
            cfg.command = "analytic";
            result = tc::run_analytic(cfg);
        } else if (oracle->parsed()) {
            cfg.command = "oracle-check";
            result = tc::run_oracle_check(cfg);
        } else if (speckle->parsed()) {
            cfg.command = "speckle";
            thermalnoon::SpeckleConfig sc;
            if (!config_path.empty()) {
                std::ifstream in(config_path);
                auto doc = tc::json::parse(in);
                // explicit flags win over the file
                if (seed_opt->count()) doc["seed"] = seed;
                if (speckle->count("--frames")) doc["frames"] = cfg.frames;
                if (speckle->count("--workers")) doc["workers"] = cfg.workers;
                if (speckle->count("--batches")) doc["batches"] = cfg.batches;
                if (speckle->count("--grid")) doc["grid"] = cfg.grid;
                if (speckle->count("--shifts")) doc["shifts"] = cfg.shifts;
                sc = tc::speckle_config_from_json(doc);
            } else {
                if (seed_opt->count()) cfg.seed = seed;
                sc = tc::speckle_config(cfg);
            }
            result = tc::run_speckle(sc);
        } else if (fock->parsed()) {
            cfg.command = "fock";
            result = tc::run_fock(cfg);
        } else {
            cfg.command = "thresholds";
            result = tc::run_thresholds(cfg);
        }
        return tc::emit(result, out, std::cout, std::cerr);
    } catch (const thermalnoon::InvalidArgument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const thermalnoon::CapacityExceeded& e) {
        std::cerr << "capacity exceeded: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
}
