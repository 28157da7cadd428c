#include "runners.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>

#include <rydsim/dynamics.hpp>

#include "csv.hpp"

namespace rydsim::harness {

namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kScanStreamStride = 1ull << 32;

bool wants(const ExperimentConfig& config, const char* format) {
    return config.formats.count(format) > 0;
}

fs::path output_dir(const ExperimentConfig& config) {
    fs::path dir(config.outputDir);
    fs::create_directories(dir);
    return dir;
}

struct CellRun {
    Eigen::MatrixXd probabilities;  // 4 x K
    LossTally losses;
    std::vector<TrialRecord> records;
};

// Sampled Monte Carlo, or the noise-free probability path when --trials 0.
CellRun run_cells(const PulseSequence& sequence, const LabelMap& map,
                  const std::vector<InputState>& inputs, const ExperimentConfig& config,
                  std::uint64_t streamOffset, bool recordTrials) {
    CellRun run;
    if (config.exactMode) {
        run.probabilities = Eigen::MatrixXd::Zero(4, static_cast<int>(inputs.size()));
        for (std::size_t k = 0; k < inputs.size(); ++k) {
            run.probabilities.col(static_cast<int>(k)) =
                exact_probabilities(sequence, map, inputs[k], config.physics);
        }
        return run;
    }
    MonteCarloOptions options;
    options.workers = config.workers;
    options.recordTrials = recordTrials;
    options.streamOffset = streamOffset;
    MonteCarloResult mc =
        run_monte_carlo(sequence, map, inputs, config.physics, options);
    run.probabilities = std::move(mc.probabilities);
    run.losses = mc.losses;
    run.records = std::move(mc.records);
    return run;
}

double normalization_survival(const ExperimentConfig& config) {
    return config.exactMode ? 1.0 : config.physics.survival_per_atom();
}

double trials_as_double(const ExperimentConfig& config) {
    return static_cast<double>(config.physics.trials);
}

// 1-sigma binomial error on (1/4) sum of the pattern-selected raw entries.
double fidelity_error(const ProbabilityMatrix& raw,
                      const std::array<std::array<double, 4>, 4>& pattern, double trials) {
    if (trials <= 0.0) return 0.0;
    double variance = 0.0;
    for (int in = 0; in < 4; ++in) {
        for (int out = 0; out < 4; ++out) {
            if (pattern[out][in] == 1.0) {
                const double p = raw.entries(out, in);
                variance += p * (1.0 - p) / trials;
            }
        }
    }
    return 0.25 * std::sqrt(variance);
}

void write_trials_csv(const fs::path& path, const std::vector<TrialRecord>& records) {
    CsvWriter csv(path.string());
    csv.raw_row("trialIndex,input,selected,detected,lossCause,sampledSeparation,sampledB");
    for (const auto& r : records) {
        csv.begin_row();
        csv.field(r.trialIndex);
        csv.field(r.inputIndex);
        csv.field(r.selectedState);
        csv.field(r.detected ? 1 : 0);
        csv.field(std::string(to_string(r.lossCause)));
        csv.field(r.separation);
        csv.field(r.blockadeShift);
        csv.end_row();
    }
}

void write_summary(const ExperimentConfig& config, const nlohmann::json& summary,
                   const std::vector<std::string>& textLines) {
    const fs::path dir = output_dir(config);
    if (wants(config, "json")) {
        std::ofstream out(dir / "summary.json", std::ios::binary);
        out << summary.dump(2) << "\n";
    }
    if (wants(config, "text-summary")) {
        std::ofstream out(dir / "summary.txt", std::ios::binary);
        for (const auto& line : textLines) out << line << "\n";
    }
}

nlohmann::json loss_json(const LossTally& losses) {
    nlohmann::json out;
    for (int c = 0; c < 5; ++c) {
        out[to_string(static_cast<LossCause>(c))] = losses.counts[c];
    }
    return out;
}

std::string matrix_csv_name(const char* stem) { return std::string(stem) + ".csv"; }

void write_matrix_csv(const fs::path& dir, const char* stem, const Eigen::Matrix4d& m) {
    CsvWriter csv((dir / matrix_csv_name(stem)).string());
    csv.raw_row("input,out00,out01,out10,out11,columnTrace");
    static const char* kInputs[4] = {"00", "01", "10", "11"};
    for (int in = 0; in < 4; ++in) {
        csv.begin_row();
        csv.field(std::string(kInputs[in]));
        for (int out = 0; out < 4; ++out) csv.field(m(out, in));
        csv.field(m.col(in).sum());
        csv.end_row();
    }
}

}  // namespace

void write_manifest(const ExperimentConfig& config) {
    const fs::path dir = output_dir(config);
    std::ofstream out(dir / "manifest.json", std::ios::binary);
    out << to_json(config).dump(2) << "\n";
}

TruthTableReport run_truth_table(const ExperimentConfig& config) {
    config.validate();
    const ProtocolName name = config.protocol.name;
    if (name != ProtocolName::CZ && name != ProtocolName::HCZ_CNOT &&
        name != ProtocolName::AS_CNOT) {
        throw std::invalid_argument("truth-table runs need a CZ/HCZ_CNOT/AS_CNOT protocol");
    }
    const auto pattern =
        ideal_pattern(name, config.protocol.parameter("secondHalfPhaseOffset", kPi));
    const PulseSequence sequence = build_sequence(config.protocol, config.physics);
    const LabelMap map = label_map(name);
    std::vector<InputState> inputs;
    for (int i = 0; i < 4; ++i) inputs.push_back(InputState::basis(i));

    const bool record = config.emitTrials && wants(config, "csv") && !config.exactMode;
    const CellRun run = run_cells(sequence, map, inputs, config, 0, record);

    TruthTableReport report;
    report.raw.entries = run.probabilities;
    report.losses = run.losses;
    const double survival = normalization_survival(config);
    report.normalized = loss_normalize(report.raw, survival);
    report.rawColumnTraces = report.raw.column_traces();
    report.normalizedColumnTraces = report.normalized.matrix.column_traces();
    report.meanNormalizedTrace = report.normalized.matrix.mean_column_trace();
    report.fidelityRaw = truth_table_fidelity(report.raw, pattern);
    report.fidelityNormalized = truth_table_fidelity(report.normalized.matrix, pattern);
    const double trials = config.exactMode ? 0.0 : trials_as_double(config);
    report.fidelityRawError = fidelity_error(report.raw, pattern, trials);
    report.fidelityNormalizedError = report.fidelityRawError / (survival * survival);

    if (config.scan) {
        const auto grid = scan_grid(*config.scan);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            ExperimentConfig point = config;
            point.scan.reset();
            apply_scan_value(point, config.scan->parameterName, grid[i]);
            point.validate();
            const PulseSequence seq = build_sequence(point.protocol, point.physics);
            const CellRun pointRun =
                run_cells(seq, map, inputs, point, (i + 1) * kScanStreamStride, false);
            ProbabilityMatrix raw;
            raw.entries = pointRun.probabilities;
            const NormalizedMatrix norm =
                loss_normalize(raw, normalization_survival(point));
            report.scanRows.push_back({grid[i], truth_table_fidelity(norm.matrix, pattern),
                                       norm.matrix.mean_column_trace()});
        }
    }

    const fs::path dir = output_dir(config);
    write_manifest(config);
    if (wants(config, "csv")) {
        write_matrix_csv(dir, "truth_table_raw", report.raw.entries);
        write_matrix_csv(dir, "truth_table_normalized", report.normalized.matrix.entries);
        if (record) write_trials_csv(dir / "trials.csv", run.records);
        if (!report.scanRows.empty()) {
            CsvWriter csv((dir / "truth_table_scan.csv").string());
            csv.raw_row(config.scan->parameterName + ",fidelityNormalized,meanColumnTrace");
            for (const auto& row : report.scanRows) {
                csv.begin_row();
                csv.field(row.value);
                csv.field(row.fidelityNormalized);
                csv.field(row.meanNormalizedTrace);
                csv.end_row();
            }
        }
    }

    nlohmann::json summary = {
        {"protocol", to_string(name)},
        {"fidelityRaw", report.fidelityRaw},
        {"fidelityRawError", report.fidelityRawError},
        {"fidelityNormalized", report.fidelityNormalized},
        {"fidelityNormalizedError", report.fidelityNormalizedError},
        {"meanNormalizedColumnTrace", report.meanNormalizedTrace},
        {"normalizationSurvival", survival},
        {"normalizedEntriesAboveOne", report.normalized.anyEntryAboveOne},
        {"losses", loss_json(report.losses)},
    };
    for (int in = 0; in < 4; ++in) {
        summary["rawColumnTraces"].push_back(report.rawColumnTraces(in));
        summary["normalizedColumnTraces"].push_back(report.normalizedColumnTraces(in));
    }

    std::vector<std::string> text;
    text.push_back(std::string("truth table: ") + to_string(name));
    text.push_back("  fidelity (raw)        = " + format_double(report.fidelityRaw) + " +- " +
                   format_double(report.fidelityRawError));
    text.push_back("  fidelity (normalized) = " + format_double(report.fidelityNormalized) +
                   " +- " + format_double(report.fidelityNormalizedError));
    text.push_back("  mean normalized column trace = " +
                   format_double(report.meanNormalizedTrace));
    text.push_back("  losses: background=" + std::to_string(report.losses.counts[1]) +
                   " trapOff=" + std::to_string(report.losses.counts[2]) +
                   " photoionization=" + std::to_string(report.losses.counts[3]) +
                   " blowAway=" + std::to_string(report.losses.counts[4]));
    write_summary(config, summary, text);
    return report;
}

BellReport run_bell(const ExperimentConfig& config) {
    config.validate();
    if (config.protocol.name != ProtocolName::BELL_B1 &&
        config.protocol.name != ProtocolName::BELL_B2) {
        throw std::invalid_argument("bell runs need a BELL_B1 or BELL_B2 protocol");
    }
    const BellState which =
        config.protocol.name == ProtocolName::BELL_B1 ? BellState::B1 : BellState::B2;
    const CnotKind kind =
        config.protocol.parameter("useAsCnot", 0.0) != 0.0 ? CnotKind::AS : CnotKind::HCZ;
    const LabelMap map = label_map(kind);
    const InputState input = bell_input(which, kind);
    const PulseSequence prep = bell_prep_sequence(which, config.physics, kind);

    const bool record = config.emitTrials && wants(config, "csv") && !config.exactMode;
    const CellRun populationRun = run_cells(prep, map, {input}, config, 0, record);

    BellReport report;
    report.losses = populationRun.losses;
    report.rawPopulations = populationRun.probabilities.col(0);
    const double survival = normalization_survival(config);
    report.normalizedPopulations = report.rawPopulations / (survival * survival);
    report.trace = report.normalizedPopulations.sum();

    // Parity scan over the analysis phase.
    ScanSpec phaseScan{"analysisPhase", 0.0, kPi, 12};
    if (config.scan && config.scan->parameterName == "analysisPhase") {
        phaseScan = *config.scan;
    } else if (config.scan) {
        throw std::invalid_argument("bell runs only scan 'analysisPhase'");
    }
    const auto phases = scan_grid(phaseScan);
    const double trials = trials_as_double(config);
    for (std::size_t i = 0; i < phases.size(); ++i) {
        PulseSequence seq = prep;
        seq.append(analysis_pulses(phases[i], config.physics));
        const CellRun run =
            run_cells(seq, map, {input}, config, (i + 1) * kScanStreamStride, false);
        const Eigen::Vector4d p = run.probabilities.col(0) / (survival * survival);
        report.parityScan.samples.push_back({phases[i], parity(p(0), p(1), p(2), p(3))});
        double variance = 0.0;
        for (int s = 0; s < 4; ++s) {
            const double raw = run.probabilities(s, 0);
            variance += raw * (1.0 - raw);
        }
        const double se = config.exactMode
                              ? 0.0
                              : std::sqrt(variance / trials) / (survival * survival);
        report.sampleErrors.push_back(se);
    }
    report.parityScan.fit = fit_parity_curve(report.parityScan.samples);

    const BellFidelity bf = bell_fidelity(report.normalizedPopulations(0),
                                          report.normalizedPopulations(3), report.parityScan.fit.absC1);
    report.fidelityRaw = bf.fidelity;
    report.entangled = bf.entangled;
    report.fidelityCorrected = report.trace >= 1.0
                                   ? report.fidelityRaw
                                   : trace_correct(report.fidelityRaw, report.trace);

    const fs::path dir = output_dir(config);
    write_manifest(config);
    if (wants(config, "csv")) {
        {
            CsvWriter csv((dir / "bell_populations.csv").string());
            csv.raw_row("state,rawProbability,normalizedProbability");
            static const char* kStates[4] = {"00", "01", "10", "11"};
            for (int s = 0; s < 4; ++s) {
                csv.begin_row();
                csv.field(std::string(kStates[s]));
                csv.field(report.rawPopulations(s));
                csv.field(report.normalizedPopulations(s));
                csv.end_row();
            }
        }
        {
            CsvWriter csv((dir / "parity_scan.csv").string());
            csv.raw_row("analysisPhase,parity,standardError");
            for (std::size_t i = 0; i < report.parityScan.samples.size(); ++i) {
                csv.begin_row();
                csv.field(report.parityScan.samples[i].phase);
                csv.field(report.parityScan.samples[i].parity);
                csv.field(report.sampleErrors[i]);
                csv.end_row();
            }
        }
        if (record) write_trials_csv(dir / "trials.csv", populationRun.records);
    }

    nlohmann::json summary = {
        {"protocol", to_string(config.protocol.name)},
        {"cnot", kind == CnotKind::AS ? "AS" : "HCZ"},
        {"populations",
         {report.normalizedPopulations(0), report.normalizedPopulations(1),
          report.normalizedPopulations(2), report.normalizedPopulations(3)}},
        {"trace", report.trace},
        {"fit", {{"reC2", report.parityScan.fit.reC2}, {"absC1", report.parityScan.fit.absC1}, {"xi", report.parityScan.fit.xi}}},
        {"fidelity", report.fidelityRaw},
        {"entangled", report.entangled},
        {"fidelityTraceCorrected", report.fidelityCorrected},
        {"losses", loss_json(report.losses)},
    };
    std::vector<std::string> text;
    text.push_back(std::string("bell preparation: ") + to_string(config.protocol.name) +
                   " via " + (kind == CnotKind::AS ? "A-S" : "H-C_Z") + " CNOT");
    text.push_back("  P00=" + format_double(report.normalizedPopulations(0)) +
                   " P01=" + format_double(report.normalizedPopulations(1)) +
                   " P10=" + format_double(report.normalizedPopulations(2)) +
                   " P11=" + format_double(report.normalizedPopulations(3)));
    text.push_back("  trace = " + format_double(report.trace));
    text.push_back("  parity fit: Re(C2)=" + format_double(report.parityScan.fit.reC2) +
                   "  |C1|=" + format_double(report.parityScan.fit.absC1) +
                   "  xi=" + format_double(report.parityScan.fit.xi));
    text.push_back("  F = " + format_double(report.fidelityRaw) +
                   (report.entangled ? "  (entangled)" : "  (not entangled)"));
    text.push_back("  F / Tr = " + format_double(report.fidelityCorrected));
    write_summary(config, summary, text);
    return report;
}

GapScanReport run_gap_scan(const ExperimentConfig& config) {
    config.validate();
    if (config.protocol.name != ProtocolName::GAP_SCAN) {
        throw std::invalid_argument("gap-scan runs need the GAP_SCAN protocol");
    }
    const LabelMap map = label_map(ProtocolName::GAP_SCAN);
    const double delta = config.physics.gapDetuning;

    ScanSpec gapScan{"gapDuration", 0.0, 40e-6, 41};
    if (delta != 0.0) gapScan.stop = 2.0 * kTwoPi / std::abs(delta);
    if (config.scan && config.scan->parameterName == "gapDuration") {
        gapScan = *config.scan;
    } else if (config.scan) {
        throw std::invalid_argument("gap-scan runs only scan 'gapDuration'");
    }

    GapScanReport report;
    report.gaps = scan_grid(gapScan);
    const InputState in01{ControlPrep::Zero, 1};
    const InputState in11{ControlPrep::One, 1};
    for (std::size_t i = 0; i < report.gaps.size(); ++i) {
        const PulseSequence seq = gap_scan_sequence(report.gaps[i], config.physics);
        const CellRun run = run_cells(seq, map, {in01, in11}, config,
                                      (i + 1) * kScanStreamStride, false);
        report.outputs01.push_back(run.probabilities.col(0));
        report.outputs11.push_back(run.probabilities.col(1));
        report.pTargetOne01.push_back(run.probabilities(1, 0) + run.probabilities(3, 0));
        report.pTargetOne11.push_back(run.probabilities(1, 1) + run.probabilities(3, 1));
    }

    report.fit01 = fit_oscillation(report.gaps, report.pTargetOne01);
    report.fit11 = fit_oscillation(report.gaps, report.pTargetOne11);
    report.degenerate = report.fit01.degenerate || report.fit11.degenerate;
    if (!report.degenerate) {
        report.fittedPeriod = 0.5 * (report.fit01.period + report.fit11.period);
        report.relativePhase = relative_phase(report.gaps, report.pTargetOne01,
                                              report.pTargetOne11,
                                              kTwoPi / report.fittedPeriod);
    }

    const fs::path dir = output_dir(config);
    write_manifest(config);
    if (wants(config, "csv")) {
        CsvWriter csv((dir / "gap_scan.csv").string());
        csv.raw_row(
            "gapDuration,"
            "in01_out00,in01_out01,in01_out10,in01_out11,in01_pTarget1,"
            "in11_out00,in11_out01,in11_out10,in11_out11,in11_pTarget1");
        for (std::size_t i = 0; i < report.gaps.size(); ++i) {
            csv.begin_row();
            csv.field(report.gaps[i]);
            for (int s = 0; s < 4; ++s) csv.field(report.outputs01[i](s));
            csv.field(report.pTargetOne01[i]);
            for (int s = 0; s < 4; ++s) csv.field(report.outputs11[i](s));
            csv.field(report.pTargetOne11[i]);
            csv.end_row();
        }
    }

    nlohmann::json summary = {
        {"gapDetuning", delta},
        {"degenerate", report.degenerate},
    };
    std::vector<std::string> text;
    text.push_back("gap scan (H-C_Z with detuned gap before the final pi/2)");
    if (report.degenerate) {
        summary["note"] = "curves are flat; oscillation period undefined";
        text.push_back("  degenerate: no resolvable oscillation (gap detuning zero?)");
    } else {
        summary["fittedPeriod"] = report.fittedPeriod;
        summary["expectedPeriod"] = delta != 0.0 ? kTwoPi / std::abs(delta) : 0.0;
        summary["relativePhase"] = report.relativePhase;
        text.push_back("  fitted period   = " + format_double(report.fittedPeriod) + " s");
        text.push_back("  relative phase (|01> vs |11>) = " +
                       format_double(report.relativePhase) + " rad");
    }
    write_summary(config, summary, text);
    return report;
}

P2Report run_p2_check(const ExperimentConfig& config) {
    config.validate();
    const PhysicsConfig& physics = config.physics;

    P2Report report;
    const double nominalShift = blockade_shift(physics.nominalSeparation, physics);
    report.analyticNominal = double_excitation_probability(physics.rabiRydberg, nominalShift);
    report.simulatedNominal = simulate_double_excitation(physics.rabiRydberg, nominalShift);

    const std::uint64_t trials = physics.trials;
    std::vector<double> separations(trials), analytic(trials), simulated(trials),
        shifts(trials);
    double analyticSum = 0.0, simulatedSum = 0.0;
    for (std::uint64_t i = 0; i < trials; ++i) {
        const PositionSample pos = sample_positions(physics, i);
        separations[i] = pos.separation();
        shifts[i] = blockade_shift(separations[i], physics);
        analytic[i] = double_excitation_probability(physics.rabiRydberg, shifts[i]);
        simulated[i] = simulate_double_excitation(physics.rabiRydberg, shifts[i], 256);
        analyticSum += analytic[i];
        simulatedSum += simulated[i];
    }
    report.thermalMeanAnalytic = analyticSum / static_cast<double>(trials);
    report.thermalMeanSimulated = simulatedSum / static_cast<double>(trials);

    for (const int exponent : {3, 6}) {
        PhysicsConfig varied = physics;
        varied.interactionExponent = exponent;
        double sum = 0.0;
        for (std::uint64_t i = 0; i < trials; ++i) {
            const double b = blockade_shift(separations[i], varied);
            sum += double_excitation_probability(physics.rabiRydberg, b);
        }
        report.analyticMeanByExponent[exponent] = sum / static_cast<double>(trials);
    }

    const fs::path dir = output_dir(config);
    write_manifest(config);
    if (wants(config, "csv")) {
        CsvWriter csv((dir / "p2_samples.csv").string());
        csv.raw_row("trialIndex,separation,blockadeShift,p2Analytic,p2Simulated");
        for (std::uint64_t i = 0; i < trials; ++i) {
            csv.begin_row();
            csv.field(i);
            csv.field(separations[i]);
            csv.field(shifts[i]);
            csv.field(analytic[i]);
            csv.field(simulated[i]);
            csv.end_row();
        }
    }

    nlohmann::json summary = {
        {"analyticNominal", report.analyticNominal},
        {"simulatedNominal", report.simulatedNominal},
        {"thermalMeanAnalytic", report.thermalMeanAnalytic},
        {"thermalMeanSimulated", report.thermalMeanSimulated},
        {"analyticMeanByExponent",
         {{"3", report.analyticMeanByExponent[3]}, {"6", report.analyticMeanByExponent[6]}}},
    };
    std::vector<std::string> text;
    text.push_back("double-excitation check");
    text.push_back("  analytic  P2 at nominal separation = " +
                   format_double(report.analyticNominal));
    text.push_back("  simulated P2 at nominal separation = " +
                   format_double(report.simulatedNominal));
    text.push_back("  thermal mean (analytic)  = " + format_double(report.thermalMeanAnalytic));
    text.push_back("  thermal mean (simulated) = " +
                   format_double(report.thermalMeanSimulated));
    text.push_back("  sensitivity: p=3 -> " +
                   format_double(report.analyticMeanByExponent[3]) + ", p=6 -> " +
                   format_double(report.analyticMeanByExponent[6]));
    write_summary(config, summary, text);
    return report;
}

FixtureReport replay_fixture(const std::string& fixturePath, const ExperimentConfig& config) {
    std::ifstream in(fixturePath);
    if (!in) throw std::invalid_argument("cannot open fixture file: " + fixturePath);
    nlohmann::json fixture;
    try {
        in >> fixture;
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("fixture parse error: ") + e.what());
    }
    if (!fixture.is_object() || !fixture.contains("type") || !fixture["type"].is_string()) {
        throw std::invalid_argument("fixture requires a string 'type' field");
    }

    FixtureReport report;
    report.type = fixture["type"].get<std::string>();
    std::vector<std::string> text;

    if (report.type == "truth-table") {
        if (!fixture.contains("matrix") || !fixture["matrix"].is_array()) {
            throw std::invalid_argument("truth-table fixture requires a 4x4 'matrix'");
        }
        ProbabilityMatrix measured;
        const auto& rows = fixture["matrix"];
        if (rows.size() != 4) throw std::invalid_argument("fixture matrix must have 4 rows");
        for (int r = 0; r < 4; ++r) {
            if (!rows[r].is_array() || rows[r].size() != 4) {
                throw std::invalid_argument("fixture matrix rows must have 4 entries");
            }
            for (int c = 0; c < 4; ++c) measured.entries(r, c) = rows[r][c].get<double>();
        }
        if (!fixture.contains("protocol")) {
            throw std::invalid_argument("truth-table fixture requires 'protocol'");
        }
        const ProtocolName name = protocol_from_string(fixture["protocol"].get<std::string>());
        const double fidelity = truth_table_fidelity(measured, ideal_pattern(name));
        report.summary = {{"type", report.type},
                          {"protocol", to_string(name)},
                          {"fidelity", fidelity},
                          {"meanColumnTrace", measured.mean_column_trace()}};
        text.push_back(std::string("fixture truth table (") + to_string(name) + ")");
        text.push_back("  fidelity = " + format_double(fidelity));
    } else if (report.type == "bell") {
        for (const char* key : {"p00", "p11", "absC1"}) {
            if (!fixture.contains(key)) {
                throw std::invalid_argument(std::string("bell fixture requires '") + key + "'");
            }
        }
        const double p00 = fixture["p00"].get<double>();
        const double p11 = fixture["p11"].get<double>();
        const double absC1 = fixture["absC1"].get<double>();
        const BellFidelity f = bell_fidelity(p00, p11, absC1);
        report.summary = {{"type", report.type},
                          {"fidelity", f.fidelity},
                          {"entangled", f.entangled}};
        text.push_back("fixture bell fidelity");
        text.push_back("  F = " + format_double(f.fidelity));
        if (fixture.contains("trace")) {
            const double corrected =
                trace_correct(f.fidelity, fixture["trace"].get<double>());
            report.summary["fidelityTraceCorrected"] = corrected;
            text.push_back("  F / Tr = " + format_double(corrected));
        }
    } else if (report.type == "parity") {
        if (!fixture.contains("samples") || !fixture["samples"].is_array()) {
            throw std::invalid_argument("parity fixture requires 'samples'");
        }
        std::vector<ParitySample> samples;
        for (const auto& s : fixture["samples"]) {
            if (!s.is_array() || s.size() != 2) {
                throw std::invalid_argument("parity samples must be [phase, parity] pairs");
            }
            samples.push_back({s[0].get<double>(), s[1].get<double>()});
        }
        const ParityFit fit = fit_parity_curve(samples);
        report.summary = {{"type", report.type},
                          {"reC2", fit.reC2},
                          {"absC1", fit.absC1},
                          {"xi", fit.xi},
                          {"residual", fit.residual}};
        text.push_back("fixture parity fit");
        text.push_back("  Re(C2)=" + format_double(fit.reC2) +
                       " |C1|=" + format_double(fit.absC1) + " xi=" + format_double(fit.xi));
    } else {
        throw std::invalid_argument("unknown fixture type '" + report.type + "'");
    }

    write_manifest(config);
    write_summary(config, report.summary, text);
    return report;
}

}  // namespace rydsim::harness
