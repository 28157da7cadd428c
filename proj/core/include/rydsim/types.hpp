#pragma once

#include <complex>
#include <cstdint>
#include <Eigen/Dense>

namespace rydsim {

using Complex = std::complex<double>;
using Matrix4cd = Eigen::Matrix4cd;
using Matrix16cd = Eigen::Matrix<Complex, 16, 16>;
using Vector16cd = Eigen::Matrix<Complex, 16, 1>;

// Single-atom levels. Q0 is the Rydberg-coupled ground state (the f=2
// hyperfine level under both gate protocols), Q1 the other qubit state,
// Lost an inert sink populated only by the noise model.
enum class Level : int { Q0 = 0, Q1 = 1, Ryd = 2, Lost = 3 };

inline constexpr int kLevelCount = 4;
inline constexpr int kJointDim = kLevelCount * kLevelCount;

enum class Atom : int { Control = 0, Target = 1 };

enum class AtomSelector : int { Control = 0, Target = 1, Both = 2 };

inline bool addresses(AtomSelector sel, Atom atom) {
    return sel == AtomSelector::Both || static_cast<int>(sel) == static_cast<int>(atom);
}

// Joint basis index for (control level, target level).
inline constexpr int joint_index(Level control, Level target) {
    return static_cast<int>(control) * kLevelCount + static_cast<int>(target);
}

inline constexpr Level level_of(int jointIndex, Atom atom) {
    return atom == Atom::Control ? static_cast<Level>(jointIndex / kLevelCount)
                                 : static_cast<Level>(jointIndex % kLevelCount);
}

// Two-atom pure state over {q0,q1,ryd,lost}⊗{q0,q1,ryd,lost}.
// Total norm, including the lost sinks, stays 1 under every operation.
struct JointState {
    Vector16cd amps = Vector16cd::Zero();

    static JointState basis(Level control, Level target) {
        JointState s;
        s.amps(joint_index(control, target)) = Complex(1.0, 0.0);
        return s;
    }

    Complex& at(Level control, Level target) { return amps(joint_index(control, target)); }
    Complex at(Level control, Level target) const { return amps(joint_index(control, target)); }

    double norm() const { return amps.norm(); }

    double population(Level control, Level target) const {
        return std::norm(amps(joint_index(control, target)));
    }

    // Marginal probability of one atom occupying a level.
    double marginal(Atom atom, Level level) const {
        double p = 0.0;
        for (int i = 0; i < kJointDim; ++i) {
            if (level_of(i, atom) == level) p += std::norm(amps(i));
        }
        return p;
    }
};

const char* to_string(Level level);
const char* to_string(Atom atom);

}  // namespace rydsim
