#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include <rydsim/metrics.hpp>
#include <rydsim/protocols.hpp>

using namespace rydsim;

namespace {

// Reference measurement matrices (columns = inputs 00,01,10,11).
ProbabilityMatrix as_reference() {
    return ProbabilityMatrix::from_rows({{{0.73, 0.08, 0.02, 0.08},
                                          {0.0, 0.72, 0.02, 0.03},
                                          {0.01, 0.04, 0.02, 0.72},
                                          {0.0, 0.02, 0.75, 0.03}}});
}

ProbabilityMatrix hcz_reference() {
    return ProbabilityMatrix::from_rows({{{0.05, 0.73, 0.0, 0.02},
                                          {0.74, 0.06, 0.02, 0.03},
                                          {0.02, 0.02, 0.79, 0.06},
                                          {0.04, 0.02, 0.12, 0.63}}});
}

}  // namespace

TEST_CASE("truth-table fidelity reproduces the reference 0.73 and 0.72") {
    const double fAs = truth_table_fidelity(as_reference(), ideal_pattern(ProtocolName::AS_CNOT));
    CHECK(fAs == doctest::Approx(0.73).epsilon(0.0069));  // +-0.005

    const double fHcz =
        truth_table_fidelity(hcz_reference(), ideal_pattern(ProtocolName::HCZ_CNOT));
    CHECK(fHcz == doctest::Approx(0.72).epsilon(0.0070));
}

TEST_CASE("fidelity of the ideal pattern itself is exactly 1") {
    const auto pattern = ideal_pattern(ProtocolName::AS_CNOT);
    const ProbabilityMatrix m = ProbabilityMatrix::from_rows(pattern);
    CHECK(truth_table_fidelity(m, pattern) == 1.0);
}

TEST_CASE("fidelity only reads pattern-selected entries and is linear") {
    const auto pattern = ideal_pattern(ProtocolName::AS_CNOT);
    ProbabilityMatrix m = as_reference();
    const double base = truth_table_fidelity(m, pattern);

    // Mass added outside the pattern does not change the value.
    ProbabilityMatrix bumped = m;
    bumped.entries(2, 0) += 0.05;  // (out=10, in=00) is off-pattern
    CHECK(truth_table_fidelity(bumped, pattern) == doctest::Approx(base).epsilon(1e-12));

    // Linearity in the measured matrix.
    ProbabilityMatrix scaled;
    scaled.entries = 0.5 * m.entries;
    CHECK(truth_table_fidelity(scaled, pattern) == doctest::Approx(0.5 * base).epsilon(1e-12));
}

TEST_CASE("fidelity rejects a non-permutation pattern") {
    std::array<std::array<double, 4>, 4> bad{};
    bad[0][0] = 1.0;
    bad[0][1] = 1.0;  // two ones in a row
    bad[1][2] = 1.0;
    bad[2][3] = 1.0;
    CHECK_THROWS_AS(truth_table_fidelity(as_reference(), bad), std::invalid_argument);
}

TEST_CASE("loss normalization") {
    ProbabilityMatrix raw;
    raw.entries.setConstant(0.1);
    raw.entries(0, 0) = 0.61;

    SUBCASE("survival 1 is the identity") {
        const NormalizedMatrix out = loss_normalize(raw, 1.0);
        CHECK((out.matrix.entries - raw.entries).cwiseAbs().maxCoeff() == 0.0);
        CHECK(!out.anyEntryAboveOne);
    }
    SUBCASE("0.61 over 0.85^2 is 0.8443") {
        const NormalizedMatrix out = loss_normalize(raw, 0.85);
        CHECK(out.matrix.entries(0, 0) == doctest::Approx(0.8443).epsilon(1e-4));
    }
    SUBCASE("entries pushed past 1 are flagged") {
        raw.entries(1, 1) = 0.9;
        const NormalizedMatrix out = loss_normalize(raw, 0.85);
        CHECK(out.anyEntryAboveOne);
        CHECK(out.maxEntry == doctest::Approx(0.9 / 0.7225));
    }
    SUBCASE("invalid survival throws") {
        CHECK_THROWS_AS(loss_normalize(raw, 0.0), std::invalid_argument);
        CHECK_THROWS_AS(loss_normalize(raw, -0.5), std::invalid_argument);
        CHECK_THROWS_AS(loss_normalize(raw, 1.5), std::invalid_argument);
    }
}

TEST_CASE("parity of simple population quadruples") {
    CHECK(parity(0.5, 0.0, 0.0, 0.5) == doctest::Approx(1.0));
    CHECK(parity(0.0, 0.5, 0.5, 0.0) == doctest::Approx(-1.0));
    CHECK(parity(0.25, 0.25, 0.25, 0.25) == doctest::Approx(0.0));
    CHECK_THROWS_AS(parity(-0.1, 0.5, 0.3, 0.3), std::invalid_argument);
}

TEST_CASE("parity is bounded by 1 for any valid quadruple") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 2000; ++i) {
        double p[4] = {u(rng), u(rng), u(rng), u(rng)};
        const double sum = p[0] + p[1] + p[2] + p[3];
        const double scale = sum > 0 ? u(rng) / sum : 0.0;  // total <= 1
        for (double& x : p) x *= scale;
        CHECK(std::abs(parity(p[0], p[1], p[2], p[3])) <= 1.0 + 1e-12);
    }
}

TEST_CASE("parity fit recovers noiseless model parameters exactly") {
    std::vector<ParitySample> samples;
    const double reC2 = -0.02, absC1 = 0.10, xi = 0.3;
    for (int i = 0; i < 12; ++i) {
        const double phi = kPi * i / 12.0;
        samples.push_back({phi, 2.0 * reC2 - 2.0 * absC1 * std::cos(2.0 * phi + xi)});
    }
    const ParityFit fit = fit_parity_curve(samples);
    CHECK(fit.reC2 == doctest::Approx(reC2).epsilon(1e-9));
    CHECK(fit.absC1 == doctest::Approx(absC1).epsilon(1e-9));
    CHECK(fit.xi == doctest::Approx(xi).epsilon(1e-9));
    CHECK(fit.residual < 1e-9);
}

TEST_CASE("parity fit residual vanishes across the model family") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int k = 0; k < 50; ++k) {
        const double reC2 = 0.3 * u(rng);
        const double absC1 = 0.25 * (u(rng) + 1.0);
        const double xi = kPi * u(rng) * 0.99;
        std::vector<ParitySample> samples;
        for (int i = 0; i < 9; ++i) {
            const double phi = kPi * i / 9.0 + 0.05 * u(rng);
            samples.push_back({phi, 2.0 * reC2 - 2.0 * absC1 * std::cos(2.0 * phi + xi)});
        }
        const ParityFit fit = fit_parity_curve(samples);
        CHECK(fit.residual < 1e-9);
        CHECK(fit.absC1 == doctest::Approx(absC1).epsilon(1e-6));
    }
}

TEST_CASE("constant parity collapses to the degenerate-fit convention") {
    std::vector<ParitySample> samples;
    for (int i = 0; i < 8; ++i) {
        samples.push_back({kPi * i / 8.0, 0.5});
    }
    const ParityFit fit = fit_parity_curve(samples);
    CHECK(fit.reC2 == doctest::Approx(0.25).epsilon(1e-9));
    CHECK(fit.absC1 == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(fit.xi == 0.0);
}

TEST_CASE("parity fit rejects degenerate phase designs") {
    std::vector<ParitySample> samples;
    for (int i = 0; i < 6; ++i) {
        samples.push_back({static_cast<double>(i) * kPi, 0.1 * i});  // all == 0 mod pi
    }
    CHECK_THROWS_AS(fit_parity_curve(samples), std::invalid_argument);
    samples.clear();
    samples.push_back({0.0, 0.1});
    samples.push_back({0.3, 0.2});
    CHECK_THROWS_AS(fit_parity_curve(samples), std::invalid_argument);  // too few
}

TEST_CASE("bell fidelity formula and entanglement witness") {
    const BellFidelity reference = bell_fidelity(0.38, 0.38, 0.10);
    CHECK(reference.fidelity == doctest::Approx(0.48).epsilon(1e-12));
    CHECK(!reference.entangled);

    const BellFidelity perfect = bell_fidelity(0.5, 0.5, 0.5);
    CHECK(perfect.fidelity == doctest::Approx(1.0));
    CHECK(perfect.entangled);

    const BellFidelity separable = bell_fidelity(1.0, 0.0, 0.0);
    CHECK(separable.fidelity == doctest::Approx(0.5));
    CHECK(!separable.entangled);
}

TEST_CASE("trace correction") {
    CHECK(trace_correct(0.48, 0.83) == doctest::Approx(0.578).epsilon(0.002));
    CHECK(trace_correct(0.7, 1.0) == doctest::Approx(0.7));
    CHECK_THROWS_AS(trace_correct(0.5, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(trace_correct(0.5, -0.2), std::invalid_argument);
}

TEST_CASE("probability matrix validation") {
    ProbabilityMatrix ok;
    ok.entries.setConstant(0.25);
    CHECK_NOTHROW(ok.validate());

    ProbabilityMatrix negative = ok;
    negative.entries(0, 0) = -0.01;
    CHECK_THROWS_AS(negative.validate(), std::invalid_argument);

    ProbabilityMatrix heavy = ok;
    heavy.entries(0, 0) = 0.9;  // column sum 1.65
    CHECK_THROWS_AS(heavy.validate(), std::invalid_argument);
    CHECK_NOTHROW(heavy.validate(0.7));
}

TEST_CASE("oscillation fit recovers period and phase of a clean cosine") {
    std::vector<double> t, y;
    const double period = 20e-6;
    for (int i = 0; i <= 60; ++i) {
        const double ti = 2.0 * period * i / 60.0;
        t.push_back(ti);
        y.push_back(0.4 + 0.3 * std::cos(kTwoPi * ti / period + 0.7));
    }
    const OscillationFit fit = fit_oscillation(t, y);
    CHECK(!fit.degenerate);
    CHECK(fit.period == doctest::Approx(period).epsilon(1e-4));
    CHECK(fit.amplitude == doctest::Approx(0.3).epsilon(1e-3));
    CHECK(fit.offset == doctest::Approx(0.4).epsilon(1e-3));

    // A second curve pi out of phase.
    std::vector<double> y2;
    for (std::size_t i = 0; i < t.size(); ++i) {
        y2.push_back(0.4 + 0.3 * std::cos(kTwoPi * t[i] / period + 0.7 + kPi));
    }
    const double diff = relative_phase(t, y, y2, kTwoPi / fit.period);
    CHECK(std::abs(std::abs(diff) - kPi) < 1e-3);
}

TEST_CASE("oscillation fit reports flat data as degenerate") {
    std::vector<double> t, y;
    for (int i = 0; i < 20; ++i) {
        t.push_back(i * 1e-6);
        y.push_back(0.5);
    }
    const OscillationFit fit = fit_oscillation(t, y);
    CHECK(fit.degenerate);
}

TEST_CASE("binomial standard error") {
    CHECK(binomial_standard_error(0.5, 100.0) == doctest::Approx(0.05));
    CHECK(binomial_standard_error(0.0, 100.0) == 0.0);
    CHECK(binomial_standard_error(0.5, 0.0) == 0.0);
}
