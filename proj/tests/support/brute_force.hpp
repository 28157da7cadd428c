#pragma once

// Brute-force oracles built from closed-form rotation matrices and explicit
// Kronecker products, independent of build_hamiltonian/evolve.

#include <cmath>

#include <rydsim/protocols.hpp>
#include <rydsim/types.hpp>

namespace rydsim::testing {

inline Matrix4cd rotation_matrix(Transition transition, double theta, double phi) {
    const Complex minusI(0.0, -1.0);
    const int g = static_cast<int>(Level::Q0);
    const int e = transition == Transition::GroundRaman ? static_cast<int>(Level::Q1)
                                                        : static_cast<int>(Level::Ryd);
    Matrix4cd u = Matrix4cd::Identity();
    u(g, g) = std::cos(theta / 2.0);
    u(e, e) = std::cos(theta / 2.0);
    u(g, e) = minusI * std::exp(Complex(0.0, phi)) * std::sin(theta / 2.0);
    u(e, g) = minusI * std::exp(Complex(0.0, -phi)) * std::sin(theta / 2.0);
    return u;
}

inline Matrix16cd kron2(const Matrix4cd& a, const Matrix4cd& b) {
    Matrix16cd out;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            out.block<4, 4>(4 * i, 4 * j) = a(i, j) * b;
        }
    }
    return out;
}

inline Matrix16cd control_unitary(const Matrix4cd& u) {
    return kron2(u, Matrix4cd::Identity());
}

inline Matrix16cd target_unitary(const Matrix4cd& u) {
    return kron2(Matrix4cd::Identity(), u);
}

// Perfect-blockade limit: the target rotation acts only when the control is
// not in the Rydberg level.
inline Matrix16cd blocked_target_unitary(const Matrix4cd& u) {
    Matrix16cd out = Matrix16cd::Zero();
    for (int c = 0; c < 4; ++c) {
        if (static_cast<Level>(c) == Level::Ryd) {
            out.block<4, 4>(4 * c, 4 * c) = Matrix4cd::Identity();
        } else {
            out.block<4, 4>(4 * c, 4 * c) = u;
        }
    }
    return out;
}

// Ideal-limit C_Z: pi on control, blocked 2pi on target, pi on control.
inline Matrix16cd ideal_cz_unitary() {
    const Matrix4cd rPi = rotation_matrix(Transition::Rydberg, kPi, 0.0);
    const Matrix4cd r2Pi = rotation_matrix(Transition::Rydberg, 2.0 * kPi, 0.0);
    return control_unitary(rPi) * blocked_target_unitary(r2Pi) * control_unitary(rPi);
}

// Ideal-limit H-C_Z CNOT with configurable second pi/2 phase.
inline Matrix16cd ideal_hcz_unitary(double secondHalfPhaseOffset) {
    const Matrix4cd first = rotation_matrix(Transition::GroundRaman, kPi / 2.0, 0.0);
    const Matrix4cd second =
        rotation_matrix(Transition::GroundRaman, kPi / 2.0, secondHalfPhaseOffset);
    return target_unitary(second) * ideal_cz_unitary() * target_unitary(first);
}

// Ideal-limit A-S CNOT (no frame correction).
inline Matrix16cd ideal_as_unitary() {
    const Matrix4cd rPi = rotation_matrix(Transition::Rydberg, kPi, 0.0);
    const Matrix4cd gPi = rotation_matrix(Transition::GroundRaman, kPi, 0.0);
    Matrix16cd u = control_unitary(rPi);
    u = blocked_target_unitary(rPi) * u;
    u = target_unitary(gPi) * u;
    u = blocked_target_unitary(rPi) * u;
    u = target_unitary(gPi) * u;
    u = blocked_target_unitary(rPi) * u;
    u = control_unitary(rPi) * u;
    return u;
}

}  // namespace rydsim::testing
