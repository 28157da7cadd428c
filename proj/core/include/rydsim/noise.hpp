#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "rydsim/physics_config.hpp"
#include "rydsim/protocols.hpp"
#include "rydsim/rng.hpp"
#include "rydsim/types.hpp"

namespace rydsim {

struct AtomPosition {
    double x = 0.0, y = 0.0, z = 0.0;
};

struct PositionSample {
    AtomPosition control;
    AtomPosition target;

    double separation() const;
};

// Gaussian trap-position draw, deterministic in (config.rngSeed, trialIndex).
PositionSample sample_positions(const PhysicsConfig& config, std::uint64_t trialIndex);

// Power-law interaction shift B = B0 (R0/R)^p, R in micrometers.
double blockade_shift(double separation, const PhysicsConfig& config);

// Perturbative double-excitation probability Ω²/(2B²), clamped to <= 1.
// B = 0 returns 1 (no blockade).
double double_excitation_probability(double rabi, double blockadeShift);

// Full-unitary estimate of the same quantity: the |rr> population averaged
// over a 2π Rydberg pulse on the target with the control parked in |r>.
double simulate_double_excitation(double rabi, double blockadeShift, int timeSteps = 512);

enum class LossCause : int {
    None = 0,
    Background = 1,
    TrapOff = 2,
    Photoionization = 3,
    BlowAway = 4,
};

const char* to_string(LossCause cause);

struct TrialOutcome {
    int selectedState = 0;
    bool detectedBothAtoms = false;
    LossCause lossCause = LossCause::None;
};

// Pumped |q0,q0> state, per-atom preparation bit flips, then the π / π/2
// preparation pulses run through core-dynamics with sampled area errors.
JointState prepare_input(const InputState& input, const LabelMap& map,
                         const PhysicsConfig& config, std::uint64_t trialIndex,
                         const InteractionSetting& interaction);

// Fig.-2-style detection of one selected output state: background and
// trap-off losses, photoionization of residual Rydberg population, selection
// π pulses, then blow-away of the f=2 (internal q0) level.
TrialOutcome measure_with_selection(const JointState& finalState, int selectedState,
                                    const LabelMap& map, const PhysicsConfig& config,
                                    std::uint64_t trialIndex);

struct LossTally {
    std::array<std::uint64_t, 5> counts{};  // indexed by LossCause

    std::uint64_t total() const;
    LossTally& operator+=(const LossTally& other);
};

struct TrialRecord {
    std::uint64_t trialIndex = 0;
    int inputIndex = 0;
    int selectedState = 0;
    bool detected = false;
    LossCause lossCause = LossCause::None;
    double separation = 0.0;
    double blockadeShift = 0.0;
};

struct MonteCarloOptions {
    int workers = 1;
    bool recordTrials = false;
    std::uint64_t streamOffset = 0;  // salts trial indices (scan points)
};

struct MonteCarloResult {
    // probabilities(out, in): detected fraction for selected output `out`.
    Eigen::MatrixXd probabilities;
    Eigen::VectorXd columnTrace;
    LossTally losses;
    std::uint64_t trialsPerCell = 0;
    std::vector<TrialRecord> records;
};

// Runs trials of prepare -> sequence (with per-trial sampled B) -> selective
// measurement for every (input, selected output) pair. Deterministic in
// (config, seed) regardless of worker count.
MonteCarloResult run_monte_carlo(const PulseSequence& sequence, const LabelMap& map,
                                 const std::vector<InputState>& inputs,
                                 const PhysicsConfig& config,
                                 const MonteCarloOptions& options = {});

MonteCarloResult run_monte_carlo(const ProtocolSpec& protocol,
                                 const std::vector<InputState>& inputs,
                                 const PhysicsConfig& config,
                                 const MonteCarloOptions& options = {});

// Noise-free output probabilities: ideal preparation, exact pulse areas, B
// from the nominal separation. Entry s is the population of selected state s.
Eigen::Vector4d exact_probabilities(const PulseSequence& sequence, const LabelMap& map,
                                    const InputState& input, const PhysicsConfig& config);

}  // namespace rydsim
