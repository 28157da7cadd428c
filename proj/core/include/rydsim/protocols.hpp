#pragma once

#include <array>
#include <map>
#include <string>

#include "rydsim/physics_config.hpp"
#include "rydsim/pulse.hpp"

namespace rydsim {

inline constexpr double kPi = 3.141592653589793238462643;

enum class ProtocolName : int { CZ, HCZ_CNOT, AS_CNOT, BELL_B1, BELL_B2, GAP_SCAN };

enum class CnotKind : int { HCZ = 0, AS = 1 };

ProtocolName protocol_from_string(const std::string& name);
const char* to_string(ProtocolName name);

// Computational-basis labeling. Rydberg pulses couple the f=2 level, which
// is |1> for the H-C_Z CNOT and |0> for the A-S CNOT; internally f=2 is
// always q0 (the Rydberg-coupled and optically pumped level).
struct LabelMap {
    Level compZero = Level::Q0;
    Level compOne = Level::Q1;

    Level internal_level(int compBit) const { return compBit == 0 ? compZero : compOne; }
    int comp_bit(Level level) const { return level == compZero ? 0 : 1; }
};

LabelMap label_map(ProtocolName name);
LabelMap label_map(CnotKind kind);

enum class ControlPrep : int { Zero = 0, One = 1, PlusI = 2 };

// |ct> computational input; PlusI denotes (|0> + i|1>)/sqrt(2).
struct InputState {
    ControlPrep control = ControlPrep::Zero;
    int target = 0;  // 0 or 1

    static InputState basis(int index) {
        return InputState{index >> 1 ? ControlPrep::One : ControlPrep::Zero, index & 1};
    }
    int basis_index() const;  // throws for PlusI
};

// Named protocol with scalar parameters; unknown parameters are rejected.
struct ProtocolSpec {
    ProtocolName name = ProtocolName::HCZ_CNOT;
    std::map<std::string, double> parameters;

    double parameter(const std::string& key, double fallback) const;
    void validate() const;
};

LabelMap label_map(const ProtocolSpec& spec);  // honors useAsCnot for Bell protocols

// pi on control, 2pi on target, pi on control, all on the Rydberg transition.
PulseSequence cz_sequence(const PhysicsConfig& config);

// pi/2 on target, the C_Z triple, pi/2 on target with `secondHalfPhaseOffset`
// (default pi, which yields the inverted truth-table orientation).
PulseSequence hcz_cnot_sequence(const PhysicsConfig& config, double secondHalfPhaseOffset = kPi);

// Rydberg pi on control, the 5-pulse amplitude swap on the target, Rydberg pi
// on control; `frameCorrection` appends the residual single-qubit phase fix.
PulseSequence as_cnot_sequence(const PhysicsConfig& config, bool frameCorrection = true);

enum class BellState : int { B1 = 0, B2 = 1 };

// pi/2 on control followed by the chosen CNOT. Run it on bell_input(...).
PulseSequence bell_prep_sequence(BellState which, const PhysicsConfig& config,
                                 CnotKind kind = CnotKind::HCZ);

// The computational input whose CNOT image is the requested Bell state.
InputState bell_input(BellState which, CnotKind kind);

// Sequential pi/2 analysis pulses (control then target) at phase `phase`.
PulseSequence analysis_pulses(double phase, const PhysicsConfig& config);

// H-C_Z sequence with a detuned gap inserted before the final pi/2 pulse.
PulseSequence gap_scan_sequence(double gapDuration, const PhysicsConfig& config);

// Dispatches a ProtocolSpec to the builders above.
PulseSequence build_sequence(const ProtocolSpec& spec, const PhysicsConfig& config);

// Expected CNOT permutation pattern (rows = outputs, columns = inputs).
std::array<std::array<double, 4>, 4> ideal_pattern(ProtocolName name,
                                                   double secondHalfPhaseOffset = kPi);

}  // namespace rydsim
