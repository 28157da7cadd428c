#include <benchmark/benchmark.h>

#include <rydsim/dynamics.hpp>
#include <rydsim/noise.hpp>
#include <rydsim/protocols.hpp>

using namespace rydsim;

namespace {

PhysicsConfig bench_config() {
    PhysicsConfig cfg;
    cfg.trials = 1;
    return cfg;
}

}  // namespace

static void BM_BuildHamiltonian(benchmark::State& state) {
    PulseSpec pulse;
    pulse.target = AtomSelector::Target;
    pulse.transition = Transition::Rydberg;
    pulse.area = 2.0 * kPi;
    pulse.rabi = kTwoPi * 0.67e6;
    const InteractionSetting b{kTwoPi * 9.3e6};
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_hamiltonian(pulse, b));
    }
}
BENCHMARK(BM_BuildHamiltonian);

static void BM_Evolve(benchmark::State& state) {
    PulseSpec pulse;
    pulse.target = AtomSelector::Target;
    pulse.transition = Transition::Rydberg;
    pulse.area = 2.0 * kPi;
    pulse.rabi = kTwoPi * 0.67e6;
    const Matrix16cd h = build_hamiltonian(pulse, {kTwoPi * 9.3e6});
    const JointState in = JointState::basis(Level::Ryd, Level::Q0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(evolve(in, h, pulse.duration()));
    }
}
BENCHMARK(BM_Evolve);

static void BM_HczSequence(benchmark::State& state) {
    const PhysicsConfig cfg = bench_config();
    const PulseSequence seq = hcz_cnot_sequence(cfg);
    const InteractionSetting b{blockade_shift(cfg.nominalSeparation, cfg)};
    const JointState in = JointState::basis(Level::Q0, Level::Q0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(apply_sequence(in, seq, b));
    }
}
BENCHMARK(BM_HczSequence);

static void BM_MonteCarloTrials(benchmark::State& state) {
    PhysicsConfig cfg = bench_config();
    cfg.trials = static_cast<std::uint64_t>(state.range(0));
    ProtocolSpec spec;
    spec.name = ProtocolName::AS_CNOT;
    std::vector<InputState> inputs{InputState::basis(2)};
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_monte_carlo(spec, inputs, cfg, {1}));
    }
    state.SetItemsProcessed(state.iterations() * 4 * state.range(0));
}
BENCHMARK(BM_MonteCarloTrials)->Arg(8)->Arg(64);

static void BM_DoubleExcitationEstimate(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            simulate_double_excitation(kTwoPi * 0.67e6, kTwoPi * 9.3e6, 256));
    }
}
BENCHMARK(BM_DoubleExcitationEstimate);

BENCHMARK_MAIN();
