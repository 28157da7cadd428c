#include "rydsim/pulse.hpp"

#include <cmath>
#include <stdexcept>

namespace rydsim {

namespace {

void require_finite(double v, const char* name) {
    if (!std::isfinite(v)) {
        throw std::invalid_argument(std::string("pulse parameter ") + name + " is not finite");
    }
}

}  // namespace

void validate(const PulseSpec& pulse) {
    require_finite(pulse.area, "area");
    require_finite(pulse.phase, "phase");
    require_finite(pulse.detuning, "detuning");
    require_finite(pulse.rabi, "rabi");
    if (pulse.durationOverride) require_finite(*pulse.durationOverride, "duration");
    if (pulse.area < 0.0) throw std::invalid_argument("pulse area must be >= 0");
    if (pulse.rabi <= 0.0) throw std::invalid_argument("pulse rabi frequency must be > 0");
    if (pulse.duration() < 0.0) throw std::invalid_argument("pulse duration must be >= 0");
}

void validate(const GapSpec& gap) {
    require_finite(gap.duration, "gap duration");
    require_finite(gap.detuning, "gap detuning");
    if (gap.duration < 0.0) throw std::invalid_argument("gap duration must be >= 0");
}

void validate(const FramePhaseSpec& frame) {
    require_finite(frame.phase, "frame phase");
}

void validate(const InteractionSetting& interaction) {
    require_finite(interaction.blockadeShift, "blockade shift");
    if (interaction.blockadeShift < 0.0) {
        throw std::invalid_argument("blockade shift must be >= 0");
    }
}

std::size_t PulseSequence::pulse_count() const {
    std::size_t n = 0;
    for (const auto& seg : segments) {
        if (std::holds_alternative<PulseSpec>(seg)) ++n;
    }
    return n;
}

double PulseSequence::total_duration() const {
    double t = 0.0;
    for (const auto& seg : segments) {
        if (const auto* pulse = std::get_if<PulseSpec>(&seg)) {
            t += pulse->duration();
        } else if (const auto* gap = std::get_if<GapSpec>(&seg)) {
            t += gap->duration;
        }
    }
    return t;
}

PulseSequence& PulseSequence::append(const PulseSequence& other) {
    segments.insert(segments.end(), other.segments.begin(), other.segments.end());
    return *this;
}

}  // namespace rydsim
