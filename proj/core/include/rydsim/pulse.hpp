#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "rydsim/types.hpp"

namespace rydsim {

enum class Transition : int {
    GroundRaman = 0,  // couples q0 <-> q1 (two-photon Raman drive)
    Rydberg = 1,      // couples q0 <-> ryd
};

// One timed, addressed, phased Rabi drive segment. All angular frequencies
// are in rad/s, durations in seconds, angles in radians.
struct PulseSpec {
    AtomSelector target = AtomSelector::Control;
    Transition transition = Transition::GroundRaman;
    double area = 0.0;      // pulse area, >= 0
    double phase = 0.0;     // drive phase
    double detuning = 0.0;  // two-photon detuning (ground) / one-photon (rydberg)
    double rabi = 0.0;      // Rabi angular frequency, > 0
    std::optional<double> durationOverride;

    double duration() const { return durationOverride ? *durationOverride : area / rabi; }
};

// Free evolution between pulses: phase exp(-i*detuning*t) accumulates on the
// internal q1 level of each atom.
struct GapSpec {
    double duration = 0.0;
    double detuning = 0.0;
};

// Classical frame relabeling: multiplies amplitudes with the addressed atom
// in `level` by exp(i*phase). Used for the A-S single-qubit phase correction.
struct FramePhaseSpec {
    AtomSelector target = AtomSelector::Control;
    Level level = Level::Q1;
    double phase = 0.0;
};

using Segment = std::variant<PulseSpec, GapSpec, FramePhaseSpec>;

struct PulseSequence {
    std::vector<Segment> segments;

    std::size_t size() const { return segments.size(); }
    std::size_t pulse_count() const;
    double total_duration() const;

    PulseSequence& append(const PulseSequence& other);
};

// Energy shift of the doubly excited |rr> state, >= 0.
struct InteractionSetting {
    double blockadeShift = 0.0;
};

void validate(const PulseSpec& pulse);
void validate(const GapSpec& gap);
void validate(const FramePhaseSpec& frame);
void validate(const InteractionSetting& interaction);

}  // namespace rydsim
