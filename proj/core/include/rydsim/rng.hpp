#pragma once

#include <cmath>
#include <cstdint>

namespace rydsim {

// Counter-based randomness: every stream is fully determined by
// (seed, stream, purpose), so Monte Carlo trials reproduce bit-identically
// regardless of execution order or worker count.

inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

enum class RngPurpose : std::uint64_t {
    Positions = 1,
    PrepFlips = 2,
    PrepPulses = 3,
    GatePulses = 4,
    SelectionPulses = 5,
    Measurement = 6,
};

class TrialRng {
  public:
    TrialRng(std::uint64_t seed, std::uint64_t stream, RngPurpose purpose) {
        state_ = mix64(seed + 0x9E3779B97F4A7C15ull);
        state_ = mix64(state_ ^ (stream + 0xD1B54A32D192ED03ull));
        state_ = mix64(state_ ^ (static_cast<std::uint64_t>(purpose) + 0x8CB92BA72F3D8DD7ull));
    }

    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ull;
        return mix64(state_);
    }

    // Uniform in [0, 1).
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform() < p; }

    // Standard normal via Box-Muller; consumes two uniforms per draw.
    double gaussian() {
        const double u1 = static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;  // (0, 1]
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
    }

  private:
    std::uint64_t state_ = 0;
};

}  // namespace rydsim
