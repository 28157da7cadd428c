#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "experiment_config.hpp"
#include "runners.hpp"

namespace {

using rydsim::harness::ExperimentConfig;

struct GlobalOptions {
    std::string configPath;
    std::string outDir;
    std::vector<std::string> formats;
    std::uint64_t seed = 0;
    bool seedSet = false;
    std::int64_t trials = -1;
    int workers = 1;
    bool emitTrials = false;
};

ExperimentConfig resolve_config(const GlobalOptions& opts) {
    ExperimentConfig config;
    if (!opts.configPath.empty()) {
        config = rydsim::harness::load_config(opts.configPath);
    }
    if (opts.seedSet) config.physics.rngSeed = opts.seed;
    if (opts.trials == 0) {
        config.exactMode = true;  // --trials 0: noise-free probabilities
    } else if (opts.trials > 0) {
        config.physics.trials = static_cast<std::uint64_t>(opts.trials);
    }
    if (!opts.outDir.empty()) config.outputDir = opts.outDir;
    if (!opts.formats.empty()) {
        config.formats = std::set<std::string>(opts.formats.begin(), opts.formats.end());
    }
    config.workers = opts.workers;
    config.emitTrials = opts.emitTrials;
    return config;
}

void require_protocol(ExperimentConfig& config, rydsim::ProtocolName fallback,
                      std::initializer_list<rydsim::ProtocolName> accepted,
                      bool configured) {
    if (!configured) {
        config.protocol.name = fallback;
        return;
    }
    for (const auto name : accepted) {
        if (config.protocol.name == name) return;
    }
    throw std::invalid_argument(std::string("protocol ") +
                                rydsim::to_string(config.protocol.name) +
                                " is not valid for this subcommand");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rydsim: pulse-level simulator of Rydberg-blockade CNOT gates"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand name

    GlobalOptions opts;
    app.add_option("--config", opts.configPath, "JSON experiment config");
    auto* seedOpt = app.add_option("--seed", opts.seed, "RNG seed override");
    app.add_option("--trials", opts.trials,
                   "Monte Carlo trials per cell (0 = exact, noise-free probabilities)");
    app.add_option("--out", opts.outDir, "output directory");
    app.add_option("--format", opts.formats, "output formats: csv, json, text-summary")
        ->delimiter(',');
    app.add_option("--workers", opts.workers, "Monte Carlo worker threads")
        ->check(CLI::PositiveNumber);
    app.add_flag("--emit-trials", opts.emitTrials, "write per-trial records to trials.csv");

    auto* truthTable = app.add_subcommand(
        "truth-table", "measure the 4x4 input/output probability matrix of a gate");
    auto* bell = app.add_subcommand(
        "bell", "prepare a Bell state and run the parity analysis");
    auto* parityScan = app.add_subcommand(
        "parity-scan", "alias of bell with an explicit analysis-phase scan");
    auto* gapScan = app.add_subcommand(
        "gap-scan", "H-C_Z output oscillations against the gap before the final pi/2");
    auto* p2Check = app.add_subcommand(
        "p2-check", "analytic and simulated double-excitation probabilities");
    auto* replay = app.add_subcommand(
        "replay-fixture", "recompute metrics from a fixture file, no simulation");
    std::string fixturePath;
    replay->add_option("--fixture", fixturePath, "fixture JSON file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }
    opts.seedSet = seedOpt->count() > 0;

    try {
        ExperimentConfig config = resolve_config(opts);
        const bool configured = config.protocolConfigured;
        using rydsim::ProtocolName;

        if (truthTable->parsed()) {
            require_protocol(config, ProtocolName::HCZ_CNOT,
                             {ProtocolName::CZ, ProtocolName::HCZ_CNOT, ProtocolName::AS_CNOT},
                             configured);
            rydsim::harness::run_truth_table(config);
        } else if (bell->parsed() || parityScan->parsed()) {
            require_protocol(config, ProtocolName::BELL_B1,
                             {ProtocolName::BELL_B1, ProtocolName::BELL_B2}, configured);
            if (parityScan->parsed() && !config.scan) {
                config.scan = rydsim::harness::ScanSpec{"analysisPhase", 0.0, rydsim::kPi, 12};
            }
            rydsim::harness::run_bell(config);
        } else if (gapScan->parsed()) {
            require_protocol(config, ProtocolName::GAP_SCAN, {ProtocolName::GAP_SCAN},
                             configured);
            rydsim::harness::run_gap_scan(config);
        } else if (p2Check->parsed()) {
            rydsim::harness::run_p2_check(config);
        } else if (replay->parsed()) {
            rydsim::harness::replay_fixture(fixturePath, config);
        }
    } catch (const std::exception& e) {
        const nlohmann::json error = {{"error", {{"message", e.what()}}}};
        std::cerr << error.dump() << std::endl;
        return 1;
    }
    return 0;
}
