#include "rydsim/metrics.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace rydsim {

namespace {

constexpr double kTau = 6.283185307179586476925287;

bool is_permutation_pattern(const std::array<std::array<double, 4>, 4>& pattern) {
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
            if (pattern[r][c] != 0.0 && pattern[r][c] != 1.0) return false;
        }
    }
    for (int c = 0; c < 4; ++c) {
        int colOnes = 0;
        for (int r = 0; r < 4; ++r) colOnes += pattern[r][c] == 1.0;
        if (colOnes != 1) return false;
    }
    for (int r = 0; r < 4; ++r) {
        int rowOnes = 0;
        for (int c = 0; c < 4; ++c) rowOnes += pattern[r][c] == 1.0;
        if (rowOnes != 1) return false;
    }
    return true;
}

// Least-squares fit of y = a + b cos(w t) + c sin(w t) at fixed w.
struct HarmonicFit {
    double a = 0.0, b = 0.0, c = 0.0;
    double residual = 0.0;
};

HarmonicFit fit_harmonic(const std::vector<double>& t, const std::vector<double>& y,
                         double w) {
    const int n = static_cast<int>(t.size());
    Eigen::MatrixXd design(n, 3);
    Eigen::VectorXd rhs(n);
    for (int i = 0; i < n; ++i) {
        design(i, 0) = 1.0;
        design(i, 1) = std::cos(w * t[i]);
        design(i, 2) = std::sin(w * t[i]);
        rhs(i) = y[i];
    }
    const Eigen::Vector3d coef = design.colPivHouseholderQr().solve(rhs);
    HarmonicFit fit;
    fit.a = coef(0);
    fit.b = coef(1);
    fit.c = coef(2);
    fit.residual = (design * coef - rhs).norm();
    return fit;
}

}  // namespace

ProbabilityMatrix ProbabilityMatrix::from_rows(
    const std::array<std::array<double, 4>, 4>& rows) {
    ProbabilityMatrix m;
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) m.entries(r, c) = rows[r][c];
    }
    return m;
}

void ProbabilityMatrix::validate(double columnSumTolerance) const {
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
            const double v = entries(r, c);
            if (!std::isfinite(v) || v < 0.0 || v > 1.0 + columnSumTolerance) {
                throw std::invalid_argument("probability matrix entry out of range");
            }
        }
    }
    for (int c = 0; c < 4; ++c) {
        if (entries.col(c).sum() > 1.0 + columnSumTolerance) {
            throw std::invalid_argument("probability matrix column sum exceeds 1");
        }
    }
}

double truth_table_fidelity(const ProbabilityMatrix& measured,
                            const std::array<std::array<double, 4>, 4>& ideal) {
    if (!is_permutation_pattern(ideal)) {
        throw std::invalid_argument("ideal truth table must be a 0/1 permutation pattern");
    }
    double trace = 0.0;
    for (int in = 0; in < 4; ++in) {
        for (int out = 0; out < 4; ++out) {
            trace += std::abs(ideal[out][in]) * measured.entries(out, in);
        }
    }
    return 0.25 * trace;
}

NormalizedMatrix loss_normalize(const ProbabilityMatrix& raw, double survival) {
    if (!(survival > 0.0) || survival > 1.0) {
        throw std::invalid_argument("survival probability must be in (0, 1]");
    }
    NormalizedMatrix out;
    out.matrix.entries = raw.entries / (survival * survival);
    out.maxEntry = out.matrix.entries.maxCoeff();
    out.anyEntryAboveOne = out.maxEntry > 1.0;
    return out;
}

double parity(double p00, double p01, double p10, double p11) {
    if (p00 < 0.0 || p01 < 0.0 || p10 < 0.0 || p11 < 0.0) {
        throw std::invalid_argument("parity inputs must be nonnegative");
    }
    return p00 + p11 - p01 - p10;
}

ParityFit fit_parity_curve(const std::vector<ParitySample>& samples) {
    if (samples.size() < 4) {
        throw std::invalid_argument("parity fit requires at least 4 samples");
    }
    const int n = static_cast<int>(samples.size());
    Eigen::MatrixXd design(n, 3);
    Eigen::VectorXd rhs(n);
    for (int i = 0; i < n; ++i) {
        design(i, 0) = 1.0;
        design(i, 1) = std::cos(2.0 * samples[i].phase);
        design(i, 2) = std::sin(2.0 * samples[i].phase);
        rhs(i) = samples[i].parity;
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
    qr.setThreshold(1e-9);
    if (qr.rank() < 3) {
        throw std::invalid_argument(
            "parity fit design is rank deficient: need >= 3 distinct phases modulo pi");
    }
    const Eigen::Vector3d coef = qr.solve(rhs);
    const double a = coef(0), b = coef(1), c = coef(2);

    ParityFit fit;
    fit.reC2 = a / 2.0;
    fit.absC1 = 0.5 * std::hypot(b, c);
    if (fit.absC1 < 1e-12) fit.absC1 = 0.0;  // below machine noise: degenerate
    fit.xi = fit.absC1 > 0.0 ? std::atan2(c, -b) : 0.0;
    if (fit.xi <= -3.141592653589793) fit.xi = 3.141592653589793;  // report in (-pi, pi]
    fit.residual = (design * coef - rhs).norm();
    return fit;
}

BellFidelity bell_fidelity(double p00, double p11, double absC1) {
    if (p00 < 0.0 || p11 < 0.0 || absC1 < 0.0) {
        throw std::invalid_argument("bell_fidelity inputs must be nonnegative");
    }
    BellFidelity result;
    result.fidelity = 0.5 * (p00 + p11) + absC1;
    result.entangled = result.fidelity > 0.5;
    return result;
}

double trace_correct(double fidelity, double trace) {
    if (!(trace > 0.0) || trace > 1.0) {
        throw std::invalid_argument("trace must be in (0, 1]");
    }
    return fidelity / trace;
}

double binomial_standard_error(double p, double n) {
    if (!(n > 0.0)) return 0.0;
    return std::sqrt(std::max(0.0, p * (1.0 - p)) / n);
}

OscillationFit fit_oscillation(const std::vector<double>& times,
                               const std::vector<double>& values) {
    if (times.size() != values.size() || times.size() < 5) {
        throw std::invalid_argument("oscillation fit requires >= 5 matched samples");
    }
    const double span = times.back() - times.front();
    if (!(span > 0.0)) throw std::invalid_argument("oscillation fit requires a time span");

    double minStep = span;
    for (std::size_t i = 1; i < times.size(); ++i) {
        minStep = std::min(minStep, times[i] - times[i - 1]);
    }

    OscillationFit out;
    const double mean =
        std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
    double spread = 0.0;
    for (const double v : values) spread = std::max(spread, std::abs(v - mean));
    if (spread < 1e-9) {
        out.degenerate = true;
        out.offset = mean;
        return out;
    }

    // Coarse scan between one cycle per span and Nyquist, then refine.
    const double wLow = kTau / (4.0 * span);
    const double wHigh = kTau / (2.0 * minStep);
    double bestW = wLow;
    double bestResidual = std::numeric_limits<double>::max();
    const int coarse = 2000;
    for (int i = 0; i <= coarse; ++i) {
        const double w = wLow + (wHigh - wLow) * i / coarse;
        const double r = fit_harmonic(times, values, w).residual;
        if (r < bestResidual) {
            bestResidual = r;
            bestW = w;
        }
    }
    double lo = std::max(wLow, bestW - (wHigh - wLow) / coarse);
    double hi = std::min(wHigh, bestW + (wHigh - wLow) / coarse);
    const double golden = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - golden * (hi - lo);
    double x2 = lo + golden * (hi - lo);
    double f1 = fit_harmonic(times, values, x1).residual;
    double f2 = fit_harmonic(times, values, x2).residual;
    for (int i = 0; i < 200 && hi - lo > 1e-12 * bestW; ++i) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - golden * (hi - lo);
            f1 = fit_harmonic(times, values, x1).residual;
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + golden * (hi - lo);
            f2 = fit_harmonic(times, values, x2).residual;
        }
    }
    const double w = 0.5 * (lo + hi);
    const HarmonicFit fit = fit_harmonic(times, values, w);

    out.period = kTau / w;
    out.offset = fit.a;
    out.amplitude = std::hypot(fit.b, fit.c);
    out.phase = std::atan2(fit.c, fit.b);
    out.residual = fit.residual;
    out.degenerate = out.amplitude < 1e-6;
    return out;
}

double relative_phase(const std::vector<double>& times, const std::vector<double>& first,
                      const std::vector<double>& second, double angularFrequency) {
    const HarmonicFit a = fit_harmonic(times, first, angularFrequency);
    const HarmonicFit b = fit_harmonic(times, second, angularFrequency);
    const double phaseA = std::atan2(a.c, a.b);
    const double phaseB = std::atan2(b.c, b.b);
    double diff = phaseA - phaseB;
    while (diff > 3.141592653589793) diff -= kTau;
    while (diff <= -3.141592653589793) diff += kTau;
    return diff;
}

}  // namespace rydsim
