#pragma once

#include <array>
#include <vector>

#include <Eigen/Dense>

namespace rydsim {

// 4x4 map from computational input (column, ordered 00,01,10,11) to measured
// output-state probability (row).
struct ProbabilityMatrix {
    Eigen::Matrix4d entries = Eigen::Matrix4d::Zero();

    static ProbabilityMatrix from_rows(const std::array<std::array<double, 4>, 4>& rows);

    Eigen::Vector4d column_traces() const { return entries.colwise().sum(); }
    double mean_column_trace() const { return entries.sum() / 4.0; }

    // entries in [0, 1+tol], column sums <= 1+tol.
    void validate(double columnSumTolerance = 1e-9) const;
};

struct NormalizedMatrix {
    ProbabilityMatrix matrix;
    bool anyEntryAboveOne = false;
    double maxEntry = 0.0;
};

// Mean probability of the correct classical input->output mapping,
// (1/4) Tr(|ideal^T| measured). `ideal` must be a 0/1 permutation pattern.
double truth_table_fidelity(const ProbabilityMatrix& measured,
                            const std::array<std::array<double, 4>, 4>& ideal);

// Divides entries by survival^2 (per-atom survival probability) and reports
// whether any entry exceeded 1.
NormalizedMatrix loss_normalize(const ProbabilityMatrix& raw, double survival);

// Parity signal P00 + P11 - P01 - P10.
double parity(double p00, double p01, double p10, double p11);

struct ParitySample {
    double phase = 0.0;   // analysis phase, radians
    double parity = 0.0;  // in [-1, 1]
};

struct ParityFit {
    double reC2 = 0.0;   // Re of the |01><10| coherence
    double absC1 = 0.0;  // |C1|, the |00><11| coherence magnitude
    double xi = 0.0;     // phase of C1 in (-pi, pi]; 0 when absC1 == 0
    double residual = 0.0;
};

struct ParityScanResult {
    std::vector<ParitySample> samples;
    ParityFit fit;
};

// Linear least squares on {1, cos 2φ, sin 2φ}; recovers the parameters of
// P(φ) = 2 Re(C2) - 2|C1| cos(2φ + ξ). Requires >= 4 samples spanning at
// least 3 distinct phases modulo π.
ParityFit fit_parity_curve(const std::vector<ParitySample>& samples);

struct BellFidelity {
    double fidelity = 0.0;
    bool entangled = false;  // witness F > 1/2
};

// F = (P00 + P11)/2 + |C1|.
BellFidelity bell_fidelity(double p00, double p11, double absC1);

// A-posteriori correction F / Tr[rho]; trace in (0, 1].
double trace_correct(double fidelity, double trace);

double binomial_standard_error(double p, double n);

struct OscillationFit {
    double period = 0.0;
    double phase = 0.0;      // y ~ offset + amplitude*cos(2π t/period - phase)
    double amplitude = 0.0;
    double offset = 0.0;
    double residual = 0.0;
    bool degenerate = false;  // no resolvable oscillation
};

// Single-frequency fit by golden-section refinement of the least-squares
// residual over the angular frequency.
OscillationFit fit_oscillation(const std::vector<double>& times,
                               const std::vector<double>& values);

// Phase difference of two equal-length curves at the common best-fit
// frequency, wrapped to (-pi, pi].
double relative_phase(const std::vector<double>& times, const std::vector<double>& first,
                      const std::vector<double>& second, double angularFrequency);

}  // namespace rydsim
