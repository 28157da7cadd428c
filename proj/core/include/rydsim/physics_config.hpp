#pragma once

#include <cstdint>

namespace rydsim {

inline constexpr double kTwoPi = 6.283185307179586476925287;

// Calibrated physical parameters. Angular frequencies in rad/s, lengths in
// micrometers, probabilities dimensionless.
struct PhysicsConfig {
    double rabiGround = kTwoPi * 0.83e6;    // ground Raman Rabi frequency (~600 ns pi time)
    double rabiRydberg = kTwoPi * 0.67e6;   // Rydberg Rabi frequency (~750 ns pi time)
    double blockadeAnchor = kTwoPi * 9.3e6; // interaction shift at the anchor separation
    double anchorSeparation = 10.2;         // um
    double interactionExponent = 6.0;       // B(R) = B0 (R0/R)^p
    double nominalSeparation = 10.2;        // trap site separation along x, um
    double sigmaTransverse = 0.3;           // per-atom position spread in x and y, um
    double sigmaAxial = 4.0;                // per-atom position spread in z, um
    double prepErrorPerAtom = -1.0;         // <0 means "use the calibrated default"
    double pulseAreaError = 0.0;            // fractional rms area error per pulse
    double backgroundLossPerRun = 0.10;     // per-atom collisional loss per run
    double trapOffLoss = 0.05;              // per-atom loss from switching the trap off
    double gapDetuning = kTwoPi * 50e3;     // two-photon detuning during gaps
    std::uint64_t rngSeed = 1;
    std::uint64_t trials = 1000;

    // Documentation-only apparatus figures; not used by the dynamics.
    double trapDepthMilliKelvin = 5.1;
    double trapWaistMicrons = 3.0;
    double atomTemperatureMicroKelvin = 225.0;

    double prep_error() const;
    double survival_per_atom() const;

    void validate() const;
};

// Bisects the per-atom preparation-error probability so the closed-form
// loss-normalized preparation-table diagonal (1-eps)^2 hits `targetDiagonal`.
double calibrate_prep_error(double targetDiagonal);

}  // namespace rydsim
