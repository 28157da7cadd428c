#pragma once

#include "rydsim/pulse.hpp"
#include "rydsim/types.hpp"

namespace rydsim {

// Rotating-frame pulse Hamiltonian on the 16-dimensional joint space.
//
// Conventions: the addressed transition carries off-diagonal couplings
// H[g,e] = (Ω/2)e^{+iφ}, H[e,g] = (Ω/2)e^{-iφ} with g=q0 and e=q1 (ground
// Raman) or e=ryd (Rydberg), a diagonal -δ on the driven excited level, and
// +B on |rr><rr|. Lost rows and columns of the single-atom block are zero.
// A resonant pulse then acts as
//   |0> -> cos(θ/2)|0> - i e^{-iφ} sin(θ/2)|e>,   θ = Ωt.
Matrix16cd build_hamiltonian(const PulseSpec& pulse, const InteractionSetting& interaction);

// Schrödinger evolution exp(-iHt)|ψ> via eigendecomposition.
// H must be Hermitian (max element deviation 1e-10) and t >= 0.
JointState evolve(const JointState& state, const Matrix16cd& hamiltonian, double duration);

// Gap free evolution: exp(-i*detuning*duration) on each atom's q1 amplitude.
JointState apply_gap(const JointState& state, const GapSpec& gap);

// Frame phase: exp(i*phase) on amplitudes with the addressed atom in `level`.
JointState apply_frame_phase(const JointState& state, const FramePhaseSpec& frame);

// Left-to-right composition of the sequence segments.
JointState apply_sequence(const JointState& state, const PulseSequence& sequence,
                          const InteractionSetting& interaction);

double max_hermiticity_deviation(const Matrix16cd& h);

}  // namespace rydsim
