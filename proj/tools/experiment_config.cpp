#include "experiment_config.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <stdexcept>

namespace rydsim::harness {

namespace {

using nlohmann::json;

using FieldSetter = std::function<void(PhysicsConfig&, double)>;

const std::map<std::string, FieldSetter>& physics_setters() {
    static const std::map<std::string, FieldSetter> setters = {
        {"rabiGround", [](PhysicsConfig& c, double v) { c.rabiGround = v; }},
        {"rabiRydberg", [](PhysicsConfig& c, double v) { c.rabiRydberg = v; }},
        {"blockadeAnchor", [](PhysicsConfig& c, double v) { c.blockadeAnchor = v; }},
        {"anchorSeparation", [](PhysicsConfig& c, double v) { c.anchorSeparation = v; }},
        {"interactionExponent", [](PhysicsConfig& c, double v) { c.interactionExponent = v; }},
        {"nominalSeparation", [](PhysicsConfig& c, double v) { c.nominalSeparation = v; }},
        {"sigmaTransverse", [](PhysicsConfig& c, double v) { c.sigmaTransverse = v; }},
        {"sigmaAxial", [](PhysicsConfig& c, double v) { c.sigmaAxial = v; }},
        {"prepErrorPerAtom", [](PhysicsConfig& c, double v) { c.prepErrorPerAtom = v; }},
        {"pulseAreaError", [](PhysicsConfig& c, double v) { c.pulseAreaError = v; }},
        {"backgroundLossPerRun",
         [](PhysicsConfig& c, double v) { c.backgroundLossPerRun = v; }},
        {"trapOffLoss", [](PhysicsConfig& c, double v) { c.trapOffLoss = v; }},
        {"gapDetuning", [](PhysicsConfig& c, double v) { c.gapDetuning = v; }},
        {"trapDepthMilliKelvin",
         [](PhysicsConfig& c, double v) { c.trapDepthMilliKelvin = v; }},
        {"trapWaistMicrons", [](PhysicsConfig& c, double v) { c.trapWaistMicrons = v; }},
        {"atomTemperatureMicroKelvin",
         [](PhysicsConfig& c, double v) { c.atomTemperatureMicroKelvin = v; }},
    };
    return setters;
}

double require_number(const json& value, const std::string& key) {
    if (!value.is_number()) {
        throw std::invalid_argument("config field '" + key + "' must be a number");
    }
    return value.get<double>();
}

void parse_physics(const json& node, PhysicsConfig& physics) {
    const auto& setters = physics_setters();
    for (const auto& [key, value] : node.items()) {
        if (key == "rngSeed") {
            if (!value.is_number_unsigned()) {
                throw std::invalid_argument("config field 'rngSeed' must be a nonnegative integer");
            }
            physics.rngSeed = value.get<std::uint64_t>();
            continue;
        }
        if (key == "trials") {
            if (!value.is_number_unsigned() || value.get<std::uint64_t>() < 1) {
                throw std::invalid_argument("config field 'trials' must be an integer >= 1");
            }
            physics.trials = value.get<std::uint64_t>();
            continue;
        }
        const auto it = setters.find(key);
        if (it == setters.end()) {
            throw std::invalid_argument("unknown physics config field '" + key + "'");
        }
        it->second(physics, require_number(value, key));
    }
}

void parse_protocol(const json& node, ProtocolSpec& protocol) {
    for (const auto& [key, value] : node.items()) {
        if (key == "name") {
            if (!value.is_string()) {
                throw std::invalid_argument("config field 'protocol.name' must be a string");
            }
            protocol.name = protocol_from_string(value.get<std::string>());
        } else if (key == "parameters") {
            if (!value.is_object()) {
                throw std::invalid_argument("config field 'protocol.parameters' must be an object");
            }
            for (const auto& [pkey, pvalue] : value.items()) {
                protocol.parameters[pkey] = require_number(pvalue, "protocol.parameters." + pkey);
            }
        } else {
            throw std::invalid_argument("unknown protocol config field '" + key + "'");
        }
    }
}

ScanSpec parse_scan(const json& node) {
    ScanSpec scan;
    bool haveName = false, haveStart = false, haveStop = false, haveSteps = false;
    for (const auto& [key, value] : node.items()) {
        if (key == "parameterName") {
            if (!value.is_string()) {
                throw std::invalid_argument("config field 'scan.parameterName' must be a string");
            }
            scan.parameterName = value.get<std::string>();
            haveName = true;
        } else if (key == "start") {
            scan.start = require_number(value, "scan.start");
            haveStart = true;
        } else if (key == "stop") {
            scan.stop = require_number(value, "scan.stop");
            haveStop = true;
        } else if (key == "steps") {
            if (!value.is_number_integer()) {
                throw std::invalid_argument("config field 'scan.steps' must be an integer");
            }
            scan.steps = value.get<int>();
            haveSteps = true;
        } else {
            throw std::invalid_argument("unknown scan config field '" + key + "'");
        }
    }
    if (!haveName) throw std::invalid_argument("scan requires 'parameterName'");
    if (!haveStart || !haveStop || !haveSteps) {
        throw std::invalid_argument("scan requires 'start', 'stop' and 'steps'");
    }
    return scan;
}

bool protocol_accepts(const ProtocolSpec& protocol, const std::string& name) {
    ProtocolSpec probe = protocol;
    probe.parameters[name] = 0.0;
    try {
        probe.validate();
        return true;
    } catch (const std::invalid_argument&) {
        return false;
    }
}

}  // namespace

const std::vector<std::string>& scannable_physics_fields() {
    static const std::vector<std::string> fields = [] {
        std::vector<std::string> names;
        for (const auto& [key, setter] : physics_setters()) names.push_back(key);
        return names;
    }();
    return fields;
}

void ExperimentConfig::validate() const {
    physics.validate();
    protocol.validate();
    if (scan) {
        if (scan->steps < 2) {
            throw std::invalid_argument("scan.steps must be >= 2");
        }
        if (!std::isfinite(scan->start) || !std::isfinite(scan->stop)) {
            throw std::invalid_argument("scan bounds must be finite");
        }
        const auto& setters = physics_setters();
        const bool isPhysics = setters.find(scan->parameterName) != setters.end();
        const bool isProtocol = protocol_accepts(protocol, scan->parameterName);
        if (!isPhysics && !isProtocol) {
            throw std::invalid_argument("scan.parameterName '" + scan->parameterName +
                                        "' names neither a physics field nor a parameter of "
                                        "the selected protocol");
        }
    }
    for (const auto& format : formats) {
        if (format != "csv" && format != "json" && format != "text-summary") {
            throw std::invalid_argument("unknown output format '" + format + "'");
        }
    }
    if (workers < 1) throw std::invalid_argument("workers must be >= 1");
}

ExperimentConfig config_from_json(const nlohmann::json& json) {
    ExperimentConfig config;
    if (!json.is_object()) {
        throw std::invalid_argument("experiment config must be a JSON object");
    }
    for (const auto& [key, value] : json.items()) {
        if (key == "physics") {
            if (!value.is_object()) {
                throw std::invalid_argument("config field 'physics' must be an object");
            }
            parse_physics(value, config.physics);
        } else if (key == "protocol") {
            if (!value.is_object()) {
                throw std::invalid_argument("config field 'protocol' must be an object");
            }
            parse_protocol(value, config.protocol);
            config.protocolConfigured = true;
        } else if (key == "scan") {
            if (!value.is_object()) {
                throw std::invalid_argument("config field 'scan' must be an object");
            }
            config.scan = parse_scan(value);
        } else if (key == "output") {
            if (!value.is_string()) {
                throw std::invalid_argument("config field 'output' must be a string");
            }
            config.outputDir = value.get<std::string>();
        } else if (key == "formats") {
            if (!value.is_array()) {
                throw std::invalid_argument("config field 'formats' must be an array");
            }
            config.formats.clear();
            for (const auto& f : value) {
                if (!f.is_string()) {
                    throw std::invalid_argument("config field 'formats' must contain strings");
                }
                config.formats.insert(f.get<std::string>());
            }
        } else {
            throw std::invalid_argument("unknown config field '" + key + "'");
        }
    }
    config.validate();
    return config;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open config file: " + path);
    }
    nlohmann::json parsed;
    try {
        in >> parsed;
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("config parse error: ") + e.what());
    }
    return config_from_json(parsed);
}

nlohmann::json to_json(const ExperimentConfig& config) {
    nlohmann::json physics = {
        {"rabiGround", config.physics.rabiGround},
        {"rabiRydberg", config.physics.rabiRydberg},
        {"blockadeAnchor", config.physics.blockadeAnchor},
        {"anchorSeparation", config.physics.anchorSeparation},
        {"interactionExponent", config.physics.interactionExponent},
        {"nominalSeparation", config.physics.nominalSeparation},
        {"sigmaTransverse", config.physics.sigmaTransverse},
        {"sigmaAxial", config.physics.sigmaAxial},
        {"prepErrorPerAtom", config.physics.prep_error()},
        {"pulseAreaError", config.physics.pulseAreaError},
        {"backgroundLossPerRun", config.physics.backgroundLossPerRun},
        {"trapOffLoss", config.physics.trapOffLoss},
        {"gapDetuning", config.physics.gapDetuning},
        {"rngSeed", config.physics.rngSeed},
        {"trials", config.physics.trials},
        {"trapDepthMilliKelvin", config.physics.trapDepthMilliKelvin},
        {"trapWaistMicrons", config.physics.trapWaistMicrons},
        {"atomTemperatureMicroKelvin", config.physics.atomTemperatureMicroKelvin},
    };
    nlohmann::json protocol = {
        {"name", to_string(config.protocol.name)},
        {"parameters", nlohmann::json::object()},
    };
    for (const auto& [key, value] : config.protocol.parameters) {
        protocol["parameters"][key] = value;
    }
    nlohmann::json out = {
        {"physics", physics},
        {"protocol", protocol},
        {"output", config.outputDir},
        {"formats", std::vector<std::string>(config.formats.begin(), config.formats.end())},
        {"workers", config.workers},
        {"emitTrials", config.emitTrials},
        {"exactMode", config.exactMode},
    };
    if (config.scan) {
        out["scan"] = {{"parameterName", config.scan->parameterName},
                       {"start", config.scan->start},
                       {"stop", config.scan->stop},
                       {"steps", config.scan->steps}};
    }
    return out;
}

void apply_scan_value(ExperimentConfig& config, const std::string& name, double value) {
    const auto& setters = physics_setters();
    const auto it = setters.find(name);
    if (it != setters.end()) {
        it->second(config.physics, value);
        return;
    }
    if (protocol_accepts(config.protocol, name)) {
        config.protocol.parameters[name] = value;
        return;
    }
    throw std::invalid_argument("cannot apply scan value to unknown parameter '" + name + "'");
}

std::vector<double> scan_grid(const ScanSpec& scan) {
    if (scan.steps < 2) throw std::invalid_argument("scan.steps must be >= 2");
    std::vector<double> grid;
    grid.reserve(scan.steps);
    for (int i = 0; i < scan.steps; ++i) {
        grid.push_back(scan.start + (scan.stop - scan.start) * i / (scan.steps - 1));
    }
    return grid;
}

}  // namespace rydsim::harness
