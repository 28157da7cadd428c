#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include <rydsim/physics_config.hpp>
#include <rydsim/protocols.hpp>

namespace rydsim::harness {

struct ScanSpec {
    std::string parameterName;
    double start = 0.0;
    double stop = 0.0;
    int steps = 0;
};

struct ExperimentConfig {
    PhysicsConfig physics;
    ProtocolSpec protocol;
    bool protocolConfigured = false;  // an explicit protocol appeared in the JSON
    std::optional<ScanSpec> scan;
    std::string outputDir = "rydsim-out";
    std::set<std::string> formats = {"csv", "json", "text-summary"};

    // Execution controls (CLI flags, not part of the JSON schema).
    int workers = 1;
    bool emitTrials = false;
    bool exactMode = false;  // --trials 0: noise-free probabilities, no sampling

    void validate() const;
};

// Parses and validates the documented JSON schema, filling defaults from the
// calibrated values. Unknown keys are rejected with the offending name.
ExperimentConfig load_config(const std::string& path);
ExperimentConfig config_from_json(const nlohmann::json& json);

// Fully resolved echo of the configuration (defaults included).
nlohmann::json to_json(const ExperimentConfig& config);

// Sets a named scalar on the physics config or the protocol parameters.
void apply_scan_value(ExperimentConfig& config, const std::string& name, double value);

// Inclusive linspace over [start, stop] with `steps` points.
std::vector<double> scan_grid(const ScanSpec& scan);

const std::vector<std::string>& scannable_physics_fields();

}  // namespace rydsim::harness
