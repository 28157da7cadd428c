#include "rydsim/physics_config.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace rydsim {

namespace {

void require(bool ok, const std::string& message) {
    if (!ok) throw std::invalid_argument("physics config: " + message);
}

void require_probability(double v, const char* name) {
    require(std::isfinite(v) && v >= 0.0 && v <= 1.0,
            std::string(name) + " must be a probability in [0, 1]");
}

}  // namespace

double calibrate_prep_error(double targetDiagonal) {
    if (!(targetDiagonal > 0.0 && targetDiagonal <= 1.0)) {
        throw std::invalid_argument("prep calibration target must be in (0, 1]");
    }
    // Both atoms must survive the bit-flip channel for the diagonal entry,
    // so the normalized diagonal is (1-eps)^2. Bisection keeps the knob
    // honest if the closed form ever grows more structure.
    double lo = 0.0, hi = 1.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double diag = (1.0 - mid) * (1.0 - mid);
        (diag > targetDiagonal ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double PhysicsConfig::prep_error() const {
    if (prepErrorPerAtom >= 0.0) return prepErrorPerAtom;
    static const double calibrated = calibrate_prep_error(0.83);
    return calibrated;
}

double PhysicsConfig::survival_per_atom() const {
    return (1.0 - backgroundLossPerRun) * (1.0 - trapOffLoss);
}

void PhysicsConfig::validate() const {
    require(std::isfinite(rabiGround) && rabiGround > 0.0, "rabiGround must be > 0");
    require(std::isfinite(rabiRydberg) && rabiRydberg > 0.0, "rabiRydberg must be > 0");
    require(std::isfinite(blockadeAnchor) && blockadeAnchor > 0.0, "blockadeAnchor must be > 0");
    require(std::isfinite(anchorSeparation) && anchorSeparation > 0.0,
            "anchorSeparation must be > 0");
    require(std::isfinite(interactionExponent) && interactionExponent >= 1.0 &&
                interactionExponent <= 12.0,
            "interactionExponent must be in [1, 12]");
    require(std::isfinite(nominalSeparation) && nominalSeparation > 0.0,
            "nominalSeparation must be > 0");
    require(std::isfinite(sigmaTransverse) && sigmaTransverse >= 0.0,
            "sigmaTransverse must be >= 0");
    require(std::isfinite(sigmaAxial) && sigmaAxial >= 0.0, "sigmaAxial must be >= 0");
    if (prepErrorPerAtom >= 0.0) require_probability(prepErrorPerAtom, "prepErrorPerAtom");
    require(std::isfinite(pulseAreaError) && pulseAreaError >= 0.0,
            "pulseAreaError must be >= 0");
    require_probability(backgroundLossPerRun, "backgroundLossPerRun");
    require_probability(trapOffLoss, "trapOffLoss");
    require(std::isfinite(gapDetuning), "gapDetuning must be finite");
    require(trials >= 1, "trials must be >= 1");
    require(std::isfinite(trapDepthMilliKelvin) && trapDepthMilliKelvin > 0.0,
            "trapDepthMilliKelvin must be > 0");
    require(std::isfinite(trapWaistMicrons) && trapWaistMicrons > 0.0,
            "trapWaistMicrons must be > 0");
    require(std::isfinite(atomTemperatureMicroKelvin) && atomTemperatureMicroKelvin > 0.0,
            "atomTemperatureMicroKelvin must be > 0");
}

}  // namespace rydsim
