#include "rydsim/dynamics.hpp"

#include <cmath>
#include <stdexcept>

#include <unsupported/Eigen/KroneckerProduct>

namespace rydsim {

namespace {

constexpr double kHermitianTolerance = 1e-10;
const Complex kI(0.0, 1.0);

// Single-atom 4x4 drive block. The lost level stays uncoupled.
Matrix4cd single_atom_drive(const PulseSpec& pulse) {
    const int g = static_cast<int>(Level::Q0);
    const int e = pulse.transition == Transition::GroundRaman ? static_cast<int>(Level::Q1)
                                                              : static_cast<int>(Level::Ryd);
    Matrix4cd h = Matrix4cd::Zero();
    const Complex coupling = 0.5 * pulse.rabi * std::exp(kI * pulse.phase);
    h(g, e) = coupling;
    h(e, g) = std::conj(coupling);
    h(e, e) = -pulse.detuning;
    return h;
}

}  // namespace

double max_hermiticity_deviation(const Matrix16cd& h) {
    return (h - h.adjoint().eval()).cwiseAbs().maxCoeff();
}

Matrix16cd build_hamiltonian(const PulseSpec& pulse, const InteractionSetting& interaction) {
    validate(pulse);
    validate(interaction);

    const Matrix4cd h = single_atom_drive(pulse);
    const Matrix4cd id = Matrix4cd::Identity();

    Matrix16cd joint = Matrix16cd::Zero();
    if (addresses(pulse.target, Atom::Control)) {
        joint += Eigen::kroneckerProduct(h, id);
    }
    if (addresses(pulse.target, Atom::Target)) {
        joint += Eigen::kroneckerProduct(id, h);
    }
    const int rr = joint_index(Level::Ryd, Level::Ryd);
    joint(rr, rr) += interaction.blockadeShift;
    return joint;
}

JointState evolve(const JointState& state, const Matrix16cd& hamiltonian, double duration) {
    if (!(duration >= 0.0)) {
        throw std::invalid_argument("evolution duration must be >= 0");
    }
    if (max_hermiticity_deviation(hamiltonian) > kHermitianTolerance) {
        throw std::invalid_argument("evolve requires a Hermitian Hamiltonian");
    }

    Eigen::SelfAdjointEigenSolver<Matrix16cd> solver(hamiltonian);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("eigendecomposition of the pulse Hamiltonian failed");
    }

    const auto& values = solver.eigenvalues();
    const auto& vectors = solver.eigenvectors();
    Vector16cd phases;
    for (int i = 0; i < kJointDim; ++i) {
        phases(i) = std::exp(-kI * values(i) * duration);
    }

    JointState out;
    out.amps = vectors * phases.asDiagonal() * (vectors.adjoint() * state.amps);
    return out;
}

JointState apply_gap(const JointState& state, const GapSpec& gap) {
    validate(gap);
    const Complex factor = std::exp(-kI * gap.detuning * gap.duration);
    JointState out = state;
    for (int i = 0; i < kJointDim; ++i) {
        if (level_of(i, Atom::Control) == Level::Q1) out.amps(i) *= factor;
        if (level_of(i, Atom::Target) == Level::Q1) out.amps(i) *= factor;
    }
    return out;
}

JointState apply_frame_phase(const JointState& state, const FramePhaseSpec& frame) {
    validate(frame);
    const Complex factor = std::exp(kI * frame.phase);
    JointState out = state;
    for (int i = 0; i < kJointDim; ++i) {
        if (addresses(frame.target, Atom::Control) && level_of(i, Atom::Control) == frame.level) {
            out.amps(i) *= factor;
        }
        if (addresses(frame.target, Atom::Target) && level_of(i, Atom::Target) == frame.level) {
            out.amps(i) *= factor;
        }
    }
    return out;
}

JointState apply_sequence(const JointState& state, const PulseSequence& sequence,
                          const InteractionSetting& interaction) {
    JointState current = state;
    for (const auto& segment : sequence.segments) {
        if (const auto* pulse = std::get_if<PulseSpec>(&segment)) {
            current = evolve(current, build_hamiltonian(*pulse, interaction), pulse->duration());
        } else if (const auto* gap = std::get_if<GapSpec>(&segment)) {
            current = apply_gap(current, *gap);
        } else if (const auto* frame = std::get_if<FramePhaseSpec>(&segment)) {
            current = apply_frame_phase(current, *frame);
        }
    }
    return current;
}

}  // namespace rydsim
