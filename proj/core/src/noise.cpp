#include "rydsim/noise.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "rydsim/dynamics.hpp"

namespace rydsim {

namespace {

const Complex kI(0.0, 1.0);

// Measures whether `atom` occupies `level`, collapsing the state either onto
// the level or onto its complement. Consumes exactly one uniform draw.
bool project_binary(JointState& state, Atom atom, Level level, TrialRng& rng) {
    const double p = state.marginal(atom, level);
    const bool inLevel = rng.uniform() < p;
    for (int i = 0; i < kJointDim; ++i) {
        if ((level_of(i, atom) == level) != inLevel) state.amps(i) = Complex(0.0, 0.0);
    }
    const double norm = state.amps.norm();
    if (norm > 0.0) state.amps /= norm;
    return inLevel;
}

// Full four-outcome level measurement of one atom.
Level measure_level(JointState& state, Atom atom, TrialRng& rng) {
    const double u = rng.uniform();
    double cumulative = 0.0;
    Level outcome = Level::Lost;
    for (int l = 0; l < kLevelCount; ++l) {
        cumulative += state.marginal(atom, static_cast<Level>(l));
        if (u < cumulative) {
            outcome = static_cast<Level>(l);
            break;
        }
    }
    for (int i = 0; i < kJointDim; ++i) {
        if (level_of(i, atom) != outcome) state.amps(i) = Complex(0.0, 0.0);
    }
    const double norm = state.amps.norm();
    if (norm > 0.0) state.amps /= norm;
    return outcome;
}

// Moves the atom's `from` amplitudes into its lost level, phases intact.
void relabel_to_lost(JointState& state, Atom atom, Level from) {
    if (from == Level::Lost) return;
    for (int l = 0; l < kLevelCount; ++l) {
        const Level other = static_cast<Level>(l);
        const int src = atom == Atom::Control ? joint_index(from, other)
                                              : joint_index(other, from);
        const int dst = atom == Atom::Control ? joint_index(Level::Lost, other)
                                              : joint_index(other, Level::Lost);
        state.amps(dst) += state.amps(src);
        state.amps(src) = Complex(0.0, 0.0);
    }
}

PulseSpec with_area_jitter(PulseSpec pulse, double sigma, TrialRng& rng) {
    const double g = rng.gaussian();  // drawn unconditionally to keep streams aligned
    pulse.area = std::max(0.0, pulse.area * (1.0 + sigma * g));
    return pulse;
}

// Preparation pulses taking the pumped |q0,q0> state to the requested
// computational input, control first.
std::vector<std::pair<Atom, PulseSpec>> preparation_pulses(const InputState& input,
                                                           const LabelMap& map,
                                                           const PhysicsConfig& config) {
    std::vector<std::pair<Atom, PulseSpec>> pulses;
    auto ground = [&config](Atom atom, double area, double phase) {
        PulseSpec p;
        p.target = atom == Atom::Control ? AtomSelector::Control : AtomSelector::Target;
        p.transition = Transition::GroundRaman;
        p.area = area;
        p.phase = phase;
        p.rabi = config.rabiGround;
        return p;
    };

    if (input.control == ControlPrep::PlusI) {
        // Phase chosen so the prepared state is (|0> + i|1>)/sqrt(2) in
        // computational labels for either label map.
        const double phase = map.compZero == Level::Q0 ? kPi : 0.0;
        pulses.emplace_back(Atom::Control, ground(Atom::Control, kPi / 2.0, phase));
    } else if (map.internal_level(input.control == ControlPrep::One ? 1 : 0) == Level::Q1) {
        pulses.emplace_back(Atom::Control, ground(Atom::Control, kPi, 0.0));
    }
    if (map.internal_level(input.target) == Level::Q1) {
        pulses.emplace_back(Atom::Target, ground(Atom::Target, kPi, 0.0));
    }
    return pulses;
}

JointState apply_sequence_noisy(const JointState& state, const PulseSequence& sequence,
                                const InteractionSetting& interaction,
                                const PhysicsConfig& config, std::uint64_t trialIndex) {
    TrialRng rng(config.rngSeed, trialIndex, RngPurpose::GatePulses);
    JointState current = state;
    for (const auto& segment : sequence.segments) {
        if (const auto* pulse = std::get_if<PulseSpec>(&segment)) {
            const PulseSpec jittered = with_area_jitter(*pulse, config.pulseAreaError, rng);
            current = evolve(current, build_hamiltonian(jittered, interaction),
                             jittered.duration());
        } else if (const auto* gap = std::get_if<GapSpec>(&segment)) {
            current = apply_gap(current, *gap);
        } else if (const auto* frame = std::get_if<FramePhaseSpec>(&segment)) {
            current = apply_frame_phase(current, *frame);
        }
    }
    return current;
}

}  // namespace

double PositionSample::separation() const {
    const double dx = control.x - target.x;
    const double dy = control.y - target.y;
    const double dz = control.z - target.z;
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

PositionSample sample_positions(const PhysicsConfig& config, std::uint64_t trialIndex) {
    TrialRng rng(config.rngSeed, trialIndex, RngPurpose::Positions);
    PositionSample sample;
    sample.control.x = config.sigmaTransverse * rng.gaussian();
    sample.control.y = config.sigmaTransverse * rng.gaussian();
    sample.control.z = config.sigmaAxial * rng.gaussian();
    sample.target.x = config.nominalSeparation + config.sigmaTransverse * rng.gaussian();
    sample.target.y = config.sigmaTransverse * rng.gaussian();
    sample.target.z = config.sigmaAxial * rng.gaussian();
    return sample;
}

double blockade_shift(double separation, const PhysicsConfig& config) {
    if (!(separation > 0.0)) {
        throw std::invalid_argument("blockade_shift requires separation > 0");
    }
    return config.blockadeAnchor *
           std::pow(config.anchorSeparation / separation, config.interactionExponent);
}

double double_excitation_probability(double rabi, double blockadeShift) {
    if (!(rabi > 0.0)) throw std::invalid_argument("rabi frequency must be > 0");
    if (blockadeShift < 0.0) throw std::invalid_argument("blockade shift must be >= 0");
    if (blockadeShift == 0.0) return 1.0;  // blockade absent
    const double p = rabi * rabi / (2.0 * blockadeShift * blockadeShift);
    return std::min(p, 1.0);
}

double simulate_double_excitation(double rabi, double blockadeShift, int timeSteps) {
    if (timeSteps < 2) throw std::invalid_argument("timeSteps must be >= 2");
    PulseSpec pulse;
    pulse.target = AtomSelector::Target;
    pulse.transition = Transition::Rydberg;
    pulse.area = 2.0 * kPi;
    pulse.rabi = rabi;

    const Matrix16cd h = build_hamiltonian(pulse, InteractionSetting{blockadeShift});
    Eigen::SelfAdjointEigenSolver<Matrix16cd> solver(h);
    const double dt = pulse.duration() / timeSteps;
    Vector16cd phases;
    for (int i = 0; i < kJointDim; ++i) {
        phases(i) = std::exp(-kI * solver.eigenvalues()(i) * dt);
    }
    const Matrix16cd step =
        solver.eigenvectors() * phases.asDiagonal() * solver.eigenvectors().adjoint();

    JointState state = JointState::basis(Level::Ryd, Level::Q0);
    const int rr = joint_index(Level::Ryd, Level::Ryd);
    // Trapezoid average of the |rr> population over the pulse.
    double sum = 0.5 * std::norm(state.amps(rr));
    for (int i = 1; i <= timeSteps; ++i) {
        state.amps = step * state.amps;
        const double p = std::norm(state.amps(rr));
        sum += i == timeSteps ? 0.5 * p : p;
    }
    return sum / timeSteps;
}

const char* to_string(LossCause cause) {
    switch (cause) {
        case LossCause::None: return "none";
        case LossCause::Background: return "background";
        case LossCause::TrapOff: return "trapOff";
        case LossCause::Photoionization: return "photoionization";
        case LossCause::BlowAway: return "blowAway";
    }
    return "?";
}

std::uint64_t LossTally::total() const {
    std::uint64_t t = 0;
    for (std::size_t i = 1; i < counts.size(); ++i) t += counts[i];
    return t;
}

LossTally& LossTally::operator+=(const LossTally& other) {
    for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += other.counts[i];
    return *this;
}

JointState prepare_input(const InputState& input, const LabelMap& map,
                         const PhysicsConfig& config, std::uint64_t trialIndex,
                         const InteractionSetting& interaction) {
    config.validate();
    if (input.target != 0 && input.target != 1) {
        throw std::invalid_argument("input target state must be 0 or 1");
    }

    TrialRng flips(config.rngSeed, trialIndex, RngPurpose::PrepFlips);
    const bool flipControl = flips.bernoulli(config.prep_error());
    const bool flipTarget = flips.bernoulli(config.prep_error());

    JointState state = JointState::basis(flipControl ? Level::Q1 : Level::Q0,
                                         flipTarget ? Level::Q1 : Level::Q0);

    TrialRng pulseRng(config.rngSeed, trialIndex, RngPurpose::PrepPulses);
    for (const auto& [atom, pulse] : preparation_pulses(input, map, config)) {
        (void)atom;
        const PulseSpec jittered = with_area_jitter(pulse, config.pulseAreaError, pulseRng);
        state = evolve(state, build_hamiltonian(jittered, interaction), jittered.duration());
    }
    return state;
}

TrialOutcome measure_with_selection(const JointState& finalState, int selectedState,
                                    const LabelMap& map, const PhysicsConfig& config,
                                    std::uint64_t trialIndex) {
    config.validate();
    if (selectedState < 0 || selectedState > 3) {
        throw std::invalid_argument("selected state index must be in 0..3");
    }
    if (std::abs(finalState.norm() - 1.0) > 1e-6) {
        throw std::invalid_argument("measure_with_selection requires a normalized state");
    }

    TrialRng rng(config.rngSeed, trialIndex, RngPurpose::Measurement);
    TrialRng selectionRng(config.rngSeed, trialIndex, RngPurpose::SelectionPulses);

    JointState state = finalState;
    state.amps /= state.amps.norm();

    std::array<bool, 2> lost{false, false};
    std::array<LossCause, 2> cause{LossCause::None, LossCause::None};
    const std::array<Atom, 2> atoms{Atom::Control, Atom::Target};

    // Background then trap-off loss. The Bernoullis are drawn for every atom
    // so matched-seed runs with losses off consume identical streams.
    for (const auto stage : {LossCause::Background, LossCause::TrapOff}) {
        const double p = stage == LossCause::Background ? config.backgroundLossPerRun
                                                        : config.trapOffLoss;
        for (const Atom atom : atoms) {
            const bool hit = rng.bernoulli(p);
            if (hit && !lost[static_cast<int>(atom)]) {
                const Level collapsed = measure_level(state, atom, rng);
                relabel_to_lost(state, atom, collapsed);
                lost[static_cast<int>(atom)] = true;
                cause[static_cast<int>(atom)] = stage;
            }
        }
    }

    // Restoring the traps photoionizes residual Rydberg population.
    for (const Atom atom : atoms) {
        if (lost[static_cast<int>(atom)]) continue;
        if (project_binary(state, atom, Level::Ryd, rng)) {
            relabel_to_lost(state, atom, Level::Ryd);
            lost[static_cast<int>(atom)] = true;
            cause[static_cast<int>(atom)] = LossCause::Photoionization;
        }
    }

    // Selection pi pulses map the selected component onto the blow-away
    // protected level (internal q1, f=1).
    const int selControl = (selectedState >> 1) & 1;
    const int selTarget = selectedState & 1;
    for (const Atom atom : atoms) {
        if (lost[static_cast<int>(atom)]) continue;
        const int bit = atom == Atom::Control ? selControl : selTarget;
        if (map.internal_level(bit) != Level::Q0) continue;
        PulseSpec pulse;
        pulse.target = atom == Atom::Control ? AtomSelector::Control : AtomSelector::Target;
        pulse.transition = Transition::GroundRaman;
        pulse.area = kPi;
        pulse.rabi = config.rabiGround;
        const PulseSpec jittered =
            with_area_jitter(pulse, config.pulseAreaError, selectionRng);
        state = evolve(state, build_hamiltonian(jittered, InteractionSetting{}),
                       jittered.duration());
    }

    // Blow-away removes anything left in f=2 (internal q0).
    for (const Atom atom : atoms) {
        if (lost[static_cast<int>(atom)]) continue;
        if (project_binary(state, atom, Level::Q0, rng)) {
            relabel_to_lost(state, atom, Level::Q0);
            lost[static_cast<int>(atom)] = true;
            cause[static_cast<int>(atom)] = LossCause::BlowAway;
        }
    }

    TrialOutcome outcome;
    outcome.selectedState = selectedState;
    outcome.detectedBothAtoms = !lost[0] && !lost[1];
    outcome.lossCause = LossCause::None;
    for (const auto stage : {LossCause::Background, LossCause::TrapOff,
                             LossCause::Photoionization, LossCause::BlowAway}) {
        if (cause[0] == stage || cause[1] == stage) {
            outcome.lossCause = stage;
            break;
        }
    }
    return outcome;
}

MonteCarloResult run_monte_carlo(const PulseSequence& sequence, const LabelMap& map,
                                 const std::vector<InputState>& inputs,
                                 const PhysicsConfig& config,
                                 const MonteCarloOptions& options) {
    config.validate();
    if (inputs.empty()) throw std::invalid_argument("run_monte_carlo requires inputs");

    const std::size_t numInputs = inputs.size();
    const std::uint64_t trialsPerCell = config.trials;
    const std::uint64_t totalTrials = numInputs * 4 * trialsPerCell;

    std::vector<std::uint64_t> detectedCounts(numInputs * 4, 0);
    LossTally losses;
    std::vector<TrialRecord> records;
    if (options.recordTrials) records.resize(totalTrials);

    auto runRange = [&](std::uint64_t begin, std::uint64_t end,
                        std::vector<std::uint64_t>& localCounts, LossTally& localLosses) {
        for (std::uint64_t flat = begin; flat < end; ++flat) {
            const std::size_t inputIdx = flat / (4 * trialsPerCell);
            const int selected = static_cast<int>((flat / trialsPerCell) % 4);
            const std::uint64_t trialIndex = options.streamOffset + flat;

            const PositionSample pos = sample_positions(config, trialIndex);
            const double separation = pos.separation();
            const double shift = blockade_shift(separation, config);
            const InteractionSetting interaction{shift};

            JointState state =
                prepare_input(inputs[inputIdx], map, config, trialIndex, interaction);
            state = apply_sequence_noisy(state, sequence, interaction, config, trialIndex);
            const TrialOutcome outcome =
                measure_with_selection(state, selected, map, config, trialIndex);

            if (outcome.detectedBothAtoms) ++localCounts[inputIdx * 4 + selected];
            ++localLosses.counts[static_cast<int>(outcome.lossCause)];
            if (options.recordTrials) {
                records[flat] = TrialRecord{trialIndex,
                                            static_cast<int>(inputIdx),
                                            selected,
                                            outcome.detectedBothAtoms,
                                            outcome.lossCause,
                                            separation,
                                            shift};
            }
        }
    };

    const int workers = std::max(1, options.workers);
    if (workers == 1 || totalTrials < 2) {
        runRange(0, totalTrials, detectedCounts, losses);
    } else {
        const std::uint64_t numWorkers =
            std::min<std::uint64_t>(static_cast<std::uint64_t>(workers), totalTrials);
        std::vector<std::vector<std::uint64_t>> workerCounts(
            numWorkers, std::vector<std::uint64_t>(numInputs * 4, 0));
        std::vector<LossTally> workerLosses(numWorkers);
        std::vector<std::thread> threads;
        threads.reserve(numWorkers);
        for (std::uint64_t w = 0; w < numWorkers; ++w) {
            const std::uint64_t begin = totalTrials * w / numWorkers;
            const std::uint64_t end = totalTrials * (w + 1) / numWorkers;
            threads.emplace_back(runRange, begin, end, std::ref(workerCounts[w]),
                                 std::ref(workerLosses[w]));
        }
        for (auto& t : threads) t.join();
        for (std::uint64_t w = 0; w < numWorkers; ++w) {
            for (std::size_t i = 0; i < detectedCounts.size(); ++i) {
                detectedCounts[i] += workerCounts[w][i];
            }
            losses += workerLosses[w];
        }
    }

    MonteCarloResult result;
    result.trialsPerCell = trialsPerCell;
    result.probabilities = Eigen::MatrixXd::Zero(4, static_cast<int>(numInputs));
    for (std::size_t k = 0; k < numInputs; ++k) {
        for (int s = 0; s < 4; ++s) {
            result.probabilities(s, static_cast<int>(k)) =
                static_cast<double>(detectedCounts[k * 4 + s]) /
                static_cast<double>(trialsPerCell);
        }
    }
    result.columnTrace = result.probabilities.colwise().sum();
    result.losses = losses;
    result.records = std::move(records);
    return result;
}

MonteCarloResult run_monte_carlo(const ProtocolSpec& protocol,
                                 const std::vector<InputState>& inputs,
                                 const PhysicsConfig& config,
                                 const MonteCarloOptions& options) {
    return run_monte_carlo(build_sequence(protocol, config), label_map(protocol), inputs,
                           config, options);
}

Eigen::Vector4d exact_probabilities(const PulseSequence& sequence, const LabelMap& map,
                                    const InputState& input, const PhysicsConfig& config) {
    config.validate();
    const InteractionSetting interaction{blockade_shift(config.nominalSeparation, config)};

    JointState state = JointState::basis(Level::Q0, Level::Q0);
    for (const auto& [atom, pulse] : preparation_pulses(input, map, config)) {
        (void)atom;
        state = evolve(state, build_hamiltonian(pulse, interaction), pulse.duration());
    }
    state = apply_sequence(state, sequence, interaction);

    Eigen::Vector4d probabilities;
    for (int s = 0; s < 4; ++s) {
        probabilities(s) =
            state.population(map.internal_level((s >> 1) & 1), map.internal_level(s & 1));
    }
    return probabilities;
}

}  // namespace rydsim
