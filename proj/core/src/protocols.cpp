#include "rydsim/protocols.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

namespace rydsim {

namespace {

PulseSpec ground_pulse(AtomSelector atom, double area, double phase, const PhysicsConfig& cfg) {
    PulseSpec p;
    p.target = atom;
    p.transition = Transition::GroundRaman;
    p.area = area;
    p.phase = phase;
    p.rabi = cfg.rabiGround;
    return p;
}

PulseSpec rydberg_pulse(AtomSelector atom, double area, const PhysicsConfig& cfg) {
    PulseSpec p;
    p.target = atom;
    p.transition = Transition::Rydberg;
    p.area = area;
    p.rabi = cfg.rabiRydberg;
    return p;
}

const std::set<std::string>& allowed_parameters(ProtocolName name) {
    static const std::set<std::string> none;
    static const std::set<std::string> hcz{"secondHalfPhaseOffset"};
    static const std::set<std::string> as{"frameCorrection"};
    static const std::set<std::string> bell{"useAsCnot", "analysisPhase", "frameCorrection",
                                            "secondHalfPhaseOffset"};
    static const std::set<std::string> gap{"gapDuration"};
    switch (name) {
        case ProtocolName::CZ: return none;
        case ProtocolName::HCZ_CNOT: return hcz;
        case ProtocolName::AS_CNOT: return as;
        case ProtocolName::BELL_B1:
        case ProtocolName::BELL_B2: return bell;
        case ProtocolName::GAP_SCAN: return gap;
    }
    return none;
}

}  // namespace

ProtocolName protocol_from_string(const std::string& name) {
    if (name == "CZ") return ProtocolName::CZ;
    if (name == "HCZ_CNOT") return ProtocolName::HCZ_CNOT;
    if (name == "AS_CNOT") return ProtocolName::AS_CNOT;
    if (name == "BELL_B1") return ProtocolName::BELL_B1;
    if (name == "BELL_B2") return ProtocolName::BELL_B2;
    if (name == "GAP_SCAN") return ProtocolName::GAP_SCAN;
    throw std::invalid_argument("unknown protocol name: " + name);
}

const char* to_string(ProtocolName name) {
    switch (name) {
        case ProtocolName::CZ: return "CZ";
        case ProtocolName::HCZ_CNOT: return "HCZ_CNOT";
        case ProtocolName::AS_CNOT: return "AS_CNOT";
        case ProtocolName::BELL_B1: return "BELL_B1";
        case ProtocolName::BELL_B2: return "BELL_B2";
        case ProtocolName::GAP_SCAN: return "GAP_SCAN";
    }
    return "?";
}

LabelMap label_map(CnotKind kind) {
    // A-S: |0> is f=2 (internal q0). H-C_Z: |1> is f=2, so the map swaps.
    if (kind == CnotKind::AS) return LabelMap{Level::Q0, Level::Q1};
    return LabelMap{Level::Q1, Level::Q0};
}

LabelMap label_map(ProtocolName name) {
    switch (name) {
        case ProtocolName::CZ:
        case ProtocolName::AS_CNOT: return label_map(CnotKind::AS);
        case ProtocolName::HCZ_CNOT:
        case ProtocolName::GAP_SCAN:
        case ProtocolName::BELL_B1:
        case ProtocolName::BELL_B2: return label_map(CnotKind::HCZ);
    }
    return label_map(CnotKind::HCZ);
}

LabelMap label_map(const ProtocolSpec& spec) {
    if ((spec.name == ProtocolName::BELL_B1 || spec.name == ProtocolName::BELL_B2) &&
        spec.parameter("useAsCnot", 0.0) != 0.0) {
        return label_map(CnotKind::AS);
    }
    return label_map(spec.name);
}

int InputState::basis_index() const {
    if (control == ControlPrep::PlusI) {
        throw std::logic_error("superposition input has no basis index");
    }
    return (control == ControlPrep::One ? 2 : 0) + target;
}

double ProtocolSpec::parameter(const std::string& key, double fallback) const {
    auto it = parameters.find(key);
    return it == parameters.end() ? fallback : it->second;
}

void ProtocolSpec::validate() const {
    const auto& allowed = allowed_parameters(name);
    for (const auto& [key, value] : parameters) {
        if (allowed.find(key) == allowed.end()) {
            throw std::invalid_argument(std::string("protocol ") + to_string(name) +
                                        " does not accept parameter '" + key + "'");
        }
        if (!std::isfinite(value)) {
            throw std::invalid_argument("protocol parameter '" + key + "' is not finite");
        }
    }
}

PulseSequence cz_sequence(const PhysicsConfig& config) {
    config.validate();
    PulseSequence seq;
    seq.segments.push_back(rydberg_pulse(AtomSelector::Control, kPi, config));
    seq.segments.push_back(rydberg_pulse(AtomSelector::Target, 2.0 * kPi, config));
    seq.segments.push_back(rydberg_pulse(AtomSelector::Control, kPi, config));
    return seq;
}

PulseSequence hcz_cnot_sequence(const PhysicsConfig& config, double secondHalfPhaseOffset) {
    config.validate();
    PulseSequence seq;
    seq.segments.push_back(ground_pulse(AtomSelector::Target, kPi / 2.0, 0.0, config));
    seq.append(cz_sequence(config));
    seq.segments.push_back(
        ground_pulse(AtomSelector::Target, kPi / 2.0, secondHalfPhaseOffset, config));
    return seq;
}

PulseSequence as_cnot_sequence(const PhysicsConfig& config, bool frameCorrection) {
    config.validate();
    PulseSequence seq;
    seq.segments.push_back(rydberg_pulse(AtomSelector::Control, kPi, config));
    seq.segments.push_back(rydberg_pulse(AtomSelector::Target, kPi, config));
    seq.segments.push_back(ground_pulse(AtomSelector::Target, kPi, 0.0, config));
    seq.segments.push_back(rydberg_pulse(AtomSelector::Target, kPi, config));
    seq.segments.push_back(ground_pulse(AtomSelector::Target, kPi, 0.0, config));
    seq.segments.push_back(rydberg_pulse(AtomSelector::Target, kPi, config));
    seq.segments.push_back(rydberg_pulse(AtomSelector::Control, kPi, config));
    if (frameCorrection) {
        // The swap branch carries a residual +i on the control's q1 (=|1>)
        // component; cancel it so the gate is an exact CNOT.
        seq.segments.push_back(FramePhaseSpec{AtomSelector::Control, Level::Q1, -kPi / 2.0});
    }
    return seq;
}

InputState bell_input(BellState which, CnotKind kind) {
    // The CNOT image of (|0>+i|1>)|t> is B1 when the gate maps |c t> with
    // t chosen so |00> and |11> are populated: t=0 for the standard (A-S)
    // orientation, t=1 for the inverted (H-C_Z) orientation.
    const int b1Target = kind == CnotKind::AS ? 0 : 1;
    const int target = which == BellState::B1 ? b1Target : 1 - b1Target;
    return InputState{ControlPrep::Zero, target};
}

PulseSequence bell_prep_sequence(BellState which, const PhysicsConfig& config, CnotKind kind) {
    (void)which;  // the input state, not the sequence, selects B1 vs B2
    PulseSequence seq;
    seq.segments.push_back(ground_pulse(AtomSelector::Control, kPi / 2.0, kPi, config));
    if (kind == CnotKind::AS) {
        seq.append(as_cnot_sequence(config));
    } else {
        seq.append(hcz_cnot_sequence(config));
    }
    return seq;
}

PulseSequence analysis_pulses(double phase, const PhysicsConfig& config) {
    config.validate();
    PulseSequence seq;
    seq.segments.push_back(ground_pulse(AtomSelector::Control, kPi / 2.0, phase, config));
    seq.segments.push_back(ground_pulse(AtomSelector::Target, kPi / 2.0, phase, config));
    return seq;
}

PulseSequence gap_scan_sequence(double gapDuration, const PhysicsConfig& config) {
    if (!(gapDuration >= 0.0)) {
        throw std::invalid_argument("gap duration must be >= 0");
    }
    PulseSequence seq = hcz_cnot_sequence(config);
    GapSpec gap{gapDuration, config.gapDetuning};
    seq.segments.insert(seq.segments.end() - 1, Segment{gap});
    return seq;
}

PulseSequence build_sequence(const ProtocolSpec& spec, const PhysicsConfig& config) {
    spec.validate();
    switch (spec.name) {
        case ProtocolName::CZ:
            return cz_sequence(config);
        case ProtocolName::HCZ_CNOT:
            return hcz_cnot_sequence(config, spec.parameter("secondHalfPhaseOffset", kPi));
        case ProtocolName::AS_CNOT:
            return as_cnot_sequence(config, spec.parameter("frameCorrection", 1.0) != 0.0);
        case ProtocolName::BELL_B1:
        case ProtocolName::BELL_B2: {
            const auto which =
                spec.name == ProtocolName::BELL_B1 ? BellState::B1 : BellState::B2;
            const auto kind =
                spec.parameter("useAsCnot", 0.0) != 0.0 ? CnotKind::AS : CnotKind::HCZ;
            return bell_prep_sequence(which, config, kind);
        }
        case ProtocolName::GAP_SCAN:
            return gap_scan_sequence(spec.parameter("gapDuration", 0.0), config);
    }
    throw std::logic_error("unhandled protocol");
}

std::array<std::array<double, 4>, 4> ideal_pattern(ProtocolName name,
                                                   double secondHalfPhaseOffset) {
    std::array<std::array<double, 4>, 4> pattern{};
    auto set = [&pattern](int in, int out) { pattern[out][in] = 1.0; };
    switch (name) {
        case ProtocolName::CZ:
            for (int i = 0; i < 4; ++i) set(i, i);
            break;
        case ProtocolName::AS_CNOT:
            set(0, 0);
            set(1, 1);
            set(2, 3);
            set(3, 2);
            break;
        case ProtocolName::HCZ_CNOT:
        case ProtocolName::GAP_SCAN: {
            // pi-offset analysis pulses invert the orientation: the target
            // flips for control |0>. Offset 0 restores the A-S orientation.
            const bool inverted = std::cos(secondHalfPhaseOffset) < 0.0;
            if (inverted) {
                set(0, 1);
                set(1, 0);
                set(2, 2);
                set(3, 3);
            } else {
                set(0, 0);
                set(1, 1);
                set(2, 3);
                set(3, 2);
            }
            break;
        }
        case ProtocolName::BELL_B1:
        case ProtocolName::BELL_B2:
            throw std::invalid_argument("Bell preparations have no truth-table pattern");
    }
    return pattern;
}

}  // namespace rydsim
