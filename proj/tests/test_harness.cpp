#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "experiment_config.hpp"
#include "runners.hpp"

using namespace rydsim;
using namespace rydsim::harness;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const std::string& tag) {
    const fs::path dir = fs::temp_directory_path() / ("rydsim_test_" + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ExperimentConfig fast_ideal(const std::string& tag) {
    ExperimentConfig config;
    config.physics.sigmaTransverse = 0.0;
    config.physics.sigmaAxial = 0.0;
    config.physics.prepErrorPerAtom = 0.0;
    config.physics.backgroundLossPerRun = 0.0;
    config.physics.trapOffLoss = 0.0;
    config.physics.blockadeAnchor = config.physics.rabiRydberg * 1e4;
    config.physics.trials = 200;
    config.outputDir = temp_dir(tag).string();
    return config;
}

}  // namespace

TEST_CASE("empty config yields the calibrated defaults") {
    const ExperimentConfig config = config_from_json(nlohmann::json::object());
    CHECK(config.physics.rabiRydberg == doctest::Approx(kTwoPi * 0.67e6));
    CHECK(config.physics.rabiGround == doctest::Approx(kTwoPi * 0.83e6));
    CHECK(config.physics.blockadeAnchor == doctest::Approx(kTwoPi * 9.3e6));
    CHECK(config.physics.anchorSeparation == 10.2);
    CHECK(config.physics.nominalSeparation == 10.2);
    CHECK(config.physics.sigmaAxial == 4.0);
    CHECK(config.physics.sigmaTransverse == 0.3);
    CHECK(config.physics.backgroundLossPerRun == 0.10);
    CHECK(config.physics.trapOffLoss == 0.05);
    CHECK(config.physics.gapDetuning == doctest::Approx(kTwoPi * 50e3));
    CHECK(config.physics.prep_error() == doctest::Approx(1.0 - std::sqrt(0.83)));
}

TEST_CASE("single-field override leaves everything else untouched") {
    const auto json = nlohmann::json::parse(R"({"physics":{"sigmaAxial":0}})");
    const ExperimentConfig config = config_from_json(json);
    CHECK(config.physics.sigmaAxial == 0.0);
    CHECK(config.physics.sigmaTransverse == 0.3);
    CHECK(config.physics.backgroundLossPerRun == 0.10);
}

TEST_CASE("unknown keys are rejected by name") {
    CHECK_THROWS_WITH_AS(config_from_json(nlohmann::json::parse(R"({"physic":{}})")),
                         "unknown config field 'physic'", std::invalid_argument);
    CHECK_THROWS_WITH_AS(
        config_from_json(nlohmann::json::parse(R"({"physics":{"sigmaZ":1}})")),
        "unknown physics config field 'sigmaZ'", std::invalid_argument);
}

TEST_CASE("scan validation names the offending parameter") {
    auto json = nlohmann::json::parse(
        R"({"scan":{"parameterName":"nope","start":0,"stop":1,"steps":4}})");
    try {
        config_from_json(json);
        FAIL("expected validation error");
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("nope") != std::string::npos);
    }

    json = nlohmann::json::parse(
        R"({"scan":{"parameterName":"sigmaAxial","start":0,"stop":1,"steps":1}})");
    CHECK_THROWS_AS(config_from_json(json), std::invalid_argument);
}

TEST_CASE("invalid physics values are rejected with the field name") {
    CHECK_THROWS_AS(
        config_from_json(nlohmann::json::parse(R"({"physics":{"backgroundLossPerRun":1.2}})")),
        std::invalid_argument);
    CHECK_THROWS_AS(
        config_from_json(nlohmann::json::parse(R"({"physics":{"interactionExponent":20}})")),
        std::invalid_argument);
    CHECK_THROWS_AS(
        config_from_json(nlohmann::json::parse(R"({"physics":{"trials":0}})")),
        std::invalid_argument);
}

TEST_CASE("noiseless truth-table run is perfect for both CNOTs") {
    for (const char* name : {"HCZ_CNOT", "AS_CNOT"}) {
        ExperimentConfig config = fast_ideal(std::string("tt_") + name);
        config.protocol.name = protocol_from_string(name);
        const TruthTableReport report = run_truth_table(config);
        CHECK(report.fidelityRaw >= 0.999);
        CHECK(report.fidelityNormalized >= 0.999);
        CHECK(fs::exists(fs::path(config.outputDir) / "truth_table_raw.csv"));
        CHECK(fs::exists(fs::path(config.outputDir) / "manifest.json"));
        CHECK(fs::exists(fs::path(config.outputDir) / "summary.json"));
    }
}

TEST_CASE("truth-table fixture replay reproduces 0.73 and 0.72") {
    ExperimentConfig config;
    config.outputDir = temp_dir("fixture_tt").string();
    const FixtureReport as =
        replay_fixture(std::string(RYDSIM_FIXTURE_DIR) + "/truth_table_as.json", config);
    CHECK(as.summary["fidelity"].get<double>() == doctest::Approx(0.73).epsilon(0.0069));
    const FixtureReport hcz =
        replay_fixture(std::string(RYDSIM_FIXTURE_DIR) + "/truth_table_hcz.json", config);
    CHECK(hcz.summary["fidelity"].get<double>() == doctest::Approx(0.72).epsilon(0.0070));
}

TEST_CASE("bell fixture replay reproduces 0.48 and 0.578") {
    ExperimentConfig config;
    config.outputDir = temp_dir("fixture_bell").string();
    const FixtureReport report =
        replay_fixture(std::string(RYDSIM_FIXTURE_DIR) + "/bell_reference.json", config);
    CHECK(report.summary["fidelity"].get<double>() == doctest::Approx(0.48).epsilon(1e-9));
    CHECK(report.summary["fidelityTraceCorrected"].get<double>() ==
          doctest::Approx(0.578).epsilon(0.002));
}

TEST_CASE("noiseless bell run in exact mode reaches unit fidelity") {
    ExperimentConfig config = fast_ideal("bell_exact");
    config.protocol.name = ProtocolName::BELL_B1;
    config.exactMode = true;
    const BellReport report = run_bell(config);
    CHECK(report.fidelityRaw >= 0.999);
    CHECK(report.entangled);
    CHECK(report.parityScan.fit.absC1 == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(report.trace == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(report.fidelityCorrected == doctest::Approx(report.fidelityRaw).epsilon(1e-9));
}

TEST_CASE("calibrated bell run corrects the fidelity upward") {
    ExperimentConfig config;
    config.outputDir = temp_dir("bell_cal").string();
    config.physics.trials = 600;
    config.protocol.name = ProtocolName::BELL_B1;
    config.workers = 4;
    const BellReport report = run_bell(config);
    CHECK(report.trace < 1.0);
    CHECK(report.fidelityCorrected > report.fidelityRaw);
}

TEST_CASE("gap-scan run with zero detuning reports degenerate curves") {
    ExperimentConfig config = fast_ideal("gap_flat");
    config.protocol.name = ProtocolName::GAP_SCAN;
    config.physics.gapDetuning = 0.0;
    config.exactMode = true;
    const GapScanReport report = run_gap_scan(config);
    CHECK(report.degenerate);
}

TEST_CASE("gap-scan run recovers the detuning period and antiphase") {
    ExperimentConfig config = fast_ideal("gap_osc");
    config.protocol.name = ProtocolName::GAP_SCAN;
    config.exactMode = true;
    const GapScanReport report = run_gap_scan(config);
    CHECK(!report.degenerate);
    const double expected = kTwoPi / config.physics.gapDetuning;
    CHECK(report.fittedPeriod == doctest::Approx(expected).epsilon(0.01));
    CHECK(std::abs(std::abs(report.relativePhase) - kPi) < 0.1);
}

TEST_CASE("p2-check reports the analytic value and exponent sensitivity") {
    ExperimentConfig config;
    config.outputDir = temp_dir("p2").string();
    config.physics.trials = 300;
    const P2Report report = run_p2_check(config);
    CHECK(report.analyticNominal == doctest::Approx(2.6e-3).epsilon(0.02));
    CHECK(report.simulatedNominal ==
          doctest::Approx(report.analyticNominal).epsilon(0.25));
    CHECK(report.analyticMeanByExponent.count(3) == 1);
    CHECK(report.analyticMeanByExponent.count(6) == 1);
    CHECK(fs::exists(fs::path(config.outputDir) / "p2_samples.csv"));
}

TEST_CASE("p2-check with zero spread collapses to the fixed-separation value") {
    ExperimentConfig config;
    config.outputDir = temp_dir("p2_sigma0").string();
    config.physics.sigmaAxial = 0.0;
    config.physics.sigmaTransverse = 0.0;
    config.physics.trials = 50;
    const P2Report report = run_p2_check(config);
    CHECK(report.thermalMeanSimulated ==
          doctest::Approx(report.simulatedNominal).epsilon(1e-6));
    CHECK(report.thermalMeanAnalytic ==
          doctest::Approx(report.analyticNominal).epsilon(1e-9));
}

TEST_CASE("trace correction recovers the no-loss Bell fidelity on matched seeds") {
    auto make = [](double background, double trapOff, const std::string& tag) {
        ExperimentConfig config;
        config.physics.sigmaTransverse = 0.0;
        config.physics.sigmaAxial = 0.0;
        config.physics.prepErrorPerAtom = 0.0;
        config.physics.backgroundLossPerRun = background;
        config.physics.trapOffLoss = trapOff;
        config.physics.trials = 2500;
        config.protocol.name = ProtocolName::BELL_B1;
        config.workers = 4;
        config.outputDir = temp_dir(tag).string();
        return config;
    };
    const BellReport lossy = run_bell(make(0.10, 0.05, "bell_match_lossy"));
    const BellReport clean = run_bell(make(0.0, 0.0, "bell_match_clean"));
    CHECK(lossy.fidelityCorrected ==
          doctest::Approx(clean.fidelityRaw).epsilon(0.04));  // ~3 sigma at N=2500
}

TEST_CASE("manifest echoes the fully resolved config") {
    ExperimentConfig config = fast_ideal("manifest");
    config.protocol.name = ProtocolName::AS_CNOT;
    run_truth_table(config);
    const auto manifest =
        nlohmann::json::parse(slurp(fs::path(config.outputDir) / "manifest.json"));
    CHECK(manifest["physics"]["rabiRydberg"].get<double>() ==
          doctest::Approx(config.physics.rabiRydberg));
    CHECK(manifest["physics"]["prepErrorPerAtom"].get<double>() == 0.0);
    CHECK(manifest["protocol"]["name"] == "AS_CNOT");
    CHECK(manifest["workers"] == config.workers);
}

TEST_CASE("matched configs produce byte-identical CSV bodies across workers") {
    auto run = [](int workers, const std::string& tag) {
        ExperimentConfig config;
        config.physics.trials = 120;
        config.protocol.name = ProtocolName::HCZ_CNOT;
        config.workers = workers;
        config.emitTrials = true;
        config.outputDir = temp_dir(tag).string();
        run_truth_table(config);
        return slurp(fs::path(config.outputDir) / "truth_table_raw.csv") +
               slurp(fs::path(config.outputDir) / "trials.csv");
    };
    const std::string one = run(1, "det_w1");
    const std::string many = run(6, "det_w6");
    CHECK(one == many);

    const std::string again = run(1, "det_w1b");
    CHECK(one == again);
}

TEST_CASE("scan grids and named-parameter application") {
    const ScanSpec scan{"sigmaAxial", 0.0, 2.0, 5};
    const auto grid = scan_grid(scan);
    REQUIRE(grid.size() == 5);
    CHECK(grid.front() == 0.0);
    CHECK(grid.back() == 2.0);
    CHECK(grid[2] == doctest::Approx(1.0));

    ExperimentConfig config;
    apply_scan_value(config, "sigmaAxial", 1.5);
    CHECK(config.physics.sigmaAxial == 1.5);
    config.protocol.name = ProtocolName::GAP_SCAN;
    apply_scan_value(config, "gapDuration", 2e-6);
    CHECK(config.protocol.parameters["gapDuration"] == 2e-6);
    CHECK_THROWS_AS(apply_scan_value(config, "bogus", 1.0), std::invalid_argument);
}

TEST_CASE("truth-table scan emits one row per scan value") {
    ExperimentConfig config = fast_ideal("tt_scan");
    config.protocol.name = ProtocolName::AS_CNOT;
    config.physics.trials = 60;
    config.scan = ScanSpec{"backgroundLossPerRun", 0.0, 0.3, 3};
    const TruthTableReport report = run_truth_table(config);
    REQUIRE(report.scanRows.size() == 3);
    CHECK(report.scanRows[0].value == 0.0);
    CHECK(report.scanRows[2].value == doctest::Approx(0.3));
    CHECK(fs::exists(fs::path(config.outputDir) / "truth_table_scan.csv"));
}
