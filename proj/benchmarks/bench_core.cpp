// Microbenchmarks for the hot paths: building Hamiltonians, diagonalizing,
// and pushing a state through the walk at several partition depths.

#include <benchmark/benchmark.h>

#include <random>

#include "padic_ctqw/evolution.hpp"
#include "padic_ctqw/function_space.hpp"
#include "padic_ctqw/model.hpp"
#include "padic_ctqw/operators.hpp"
#include "padic_ctqw/scaling.hpp"

namespace {

using namespace ctqw;

RadialProfile bench_profile(Level level) {
    // Geometric shell decay with the deep value balancing the mass to 1.
    std::vector<double> shells(static_cast<std::size_t>(level.value()));
    double mass = 0.0;
    for (int v = 0; v < level.value(); ++v) {
        shells[static_cast<std::size_t>(v)] = std::ldexp(1.0, -v);
        mass += shells[static_cast<std::size_t>(v)] * std::ldexp(1.0, -(v + 1));
    }
    const double deep = (1.0 - mass) / std::ldexp(1.0, -level.value());
    return RadialProfile(level, std::move(shells), deep);
}

void BM_convolution_hamiltonian(benchmark::State& state) {
    const Level level(static_cast<int>(state.range(0)));
    const RadialProfile profile = bench_profile(level);
    const Eigen::VectorXd potential =
        Eigen::VectorXd::Zero(static_cast<Eigen::Index>(level.dim()));
    for (auto _ : state) {
        benchmark::DoNotOptimize(convolution_hamiltonian(profile, 1.0, potential));
    }
}
BENCHMARK(BM_convolution_hamiltonian)->Arg(4)->Arg(6)->Arg(8);

void BM_spectral_decompose(benchmark::State& state) {
    const Level level(static_cast<int>(state.range(0)));
    const RadialProfile profile = bench_profile(level);
    const Eigen::VectorXd potential =
        Eigen::VectorXd::Zero(static_cast<Eigen::Index>(level.dim()));
    const HermitianHamiltonian h = convolution_hamiltonian(profile, 1.0, potential);
    for (auto _ : state) {
        benchmark::DoNotOptimize(spectral_decompose(h));
    }
}
BENCHMARK(BM_spectral_decompose)->Arg(4)->Arg(6)->Arg(8);

void BM_propagate(benchmark::State& state) {
    const Level level(static_cast<int>(state.range(0)));
    const RadialProfile profile = bench_profile(level);
    const Eigen::VectorXd potential =
        Eigen::VectorXd::Zero(static_cast<Eigen::Index>(level.dim()));
    const HermitianHamiltonian h = convolution_hamiltonian(profile, 1.0, potential);
    const SpectralDecomposition decomposition = spectral_decompose(h);
    const TestFunction psi0 = TestFunction::basis_state(h.support(), 0);
    double t = 0.0;
    for (auto _ : state) {
        t += 0.25;
        benchmark::DoNotOptimize(propagate(decomposition, psi0, t));
    }
}
BENCHMARK(BM_propagate)->Arg(4)->Arg(6)->Arg(8);

void BM_transition_matrix(benchmark::State& state) {
    const Level level(static_cast<int>(state.range(0)));
    const RadialProfile profile = bench_profile(level);
    const Eigen::VectorXd potential =
        Eigen::VectorXd::Zero(static_cast<Eigen::Index>(level.dim()));
    const SpectralDecomposition decomposition =
        spectral_decompose(convolution_hamiltonian(profile, 1.0, potential));
    double t = 0.0;
    for (auto _ : state) {
        t += 0.25;
        benchmark::DoNotOptimize(transition_matrix(decomposition, t));
    }
}
BENCHMARK(BM_transition_matrix)->Arg(4)->Arg(6)->Arg(8);

void BM_heat_evolve(benchmark::State& state) {
    const Level level(static_cast<int>(state.range(0)));
    const RadialProfile profile = bench_profile(level);
    const Eigen::VectorXd potential =
        Eigen::VectorXd::Zero(static_cast<Eigen::Index>(level.dim()));
    const HermitianHamiltonian h = convolution_hamiltonian(profile, 1.0, potential);
    const HeatGenerator generator = HeatGenerator::from_hamiltonian(h);
    Eigen::VectorXd u0 = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(level.dim()));
    u0[0] = 1.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(heat_evolve(generator, u0, 1.0));
    }
}
BENCHMARK(BM_heat_evolve)->Arg(4)->Arg(6)->Arg(8);

void BM_refine_hamiltonian(benchmark::State& state) {
    const Level level(2);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    Eigen::MatrixXd a(4, 4);
    for (Eigen::Index i = 0; i < 4; ++i) {
        for (Eigen::Index k = 0; k <= i; ++k) {
            a(i, k) = a(k, i) = dist(rng);
        }
    }
    const ModelSpec spec = ModelSpec::biweighted(BiWeights(SupportSet::full(level), a, a));
    const Level target(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(refine_hamiltonian(spec, target));
    }
}
BENCHMARK(BM_refine_hamiltonian)->Arg(4)->Arg(6)->Arg(8);

}  // namespace

BENCHMARK_MAIN();
