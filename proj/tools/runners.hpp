#pragma once

#include <map>
#include <string>
#include <vector>

#include <rydsim/metrics.hpp>
#include <rydsim/noise.hpp>

#include "experiment_config.hpp"

namespace rydsim::harness {

struct TruthTableReport {
    ProbabilityMatrix raw;
    NormalizedMatrix normalized;
    double fidelityRaw = 0.0;
    double fidelityRawError = 0.0;
    double fidelityNormalized = 0.0;
    double fidelityNormalizedError = 0.0;
    Eigen::Vector4d rawColumnTraces = Eigen::Vector4d::Zero();
    Eigen::Vector4d normalizedColumnTraces = Eigen::Vector4d::Zero();
    double meanNormalizedTrace = 0.0;
    LossTally losses;

    struct ScanRow {
        double value = 0.0;
        double fidelityNormalized = 0.0;
        double meanNormalizedTrace = 0.0;
    };
    std::vector<ScanRow> scanRows;
};

struct BellReport {
    Eigen::Vector4d rawPopulations = Eigen::Vector4d::Zero();
    Eigen::Vector4d normalizedPopulations = Eigen::Vector4d::Zero();
    double trace = 0.0;
    ParityScanResult parityScan;
    std::vector<double> sampleErrors;
    double fidelityRaw = 0.0;
    bool entangled = false;
    double fidelityCorrected = 0.0;
    LossTally losses;

    const ParityFit& fit() const { return parityScan.fit; }
};

struct GapScanReport {
    std::vector<double> gaps;
    std::vector<Eigen::Vector4d> outputs01;
    std::vector<Eigen::Vector4d> outputs11;
    std::vector<double> pTargetOne01;
    std::vector<double> pTargetOne11;
    OscillationFit fit01;
    OscillationFit fit11;
    bool degenerate = true;
    double fittedPeriod = 0.0;
    double relativePhase = 0.0;
};

struct P2Report {
    double analyticNominal = 0.0;
    double simulatedNominal = 0.0;
    double thermalMeanAnalytic = 0.0;
    double thermalMeanSimulated = 0.0;
    std::map<int, double> analyticMeanByExponent;  // sensitivity to p in {3, 6}
};

struct FixtureReport {
    std::string type;
    nlohmann::json summary;
};

TruthTableReport run_truth_table(const ExperimentConfig& config);
BellReport run_bell(const ExperimentConfig& config);
GapScanReport run_gap_scan(const ExperimentConfig& config);
P2Report run_p2_check(const ExperimentConfig& config);
FixtureReport replay_fixture(const std::string& fixturePath, const ExperimentConfig& config);

void write_manifest(const ExperimentConfig& config);

}  // namespace rydsim::harness
