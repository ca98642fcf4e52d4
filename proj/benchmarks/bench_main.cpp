#include <benchmark/benchmark.h>

#include <random>

#include "affine/circuit.hpp"
#include "affine/f2matrix.hpp"
#include "affine/oracle.hpp"
#include "affine/signature.hpp"

using namespace affine;

static void BM_rref(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    std::mt19937_64 rng(7);
    F2Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m.set(i, j, rng() & 1u);
    for (auto _ : state) benchmark::DoNotOptimize(rref(m));
}
BENCHMARK(BM_rref)->Arg(64)->Arg(256)->Arg(1024);

static void BM_circuit_signature(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const std::size_t gates = static_cast<std::size_t>(state.range(1));
    auto c = oracle::random_clifford_circuit(n, gates, 11);
    for (auto _ : state) benchmark::DoNotOptimize(circuit_signature(c));
}
BENCHMARK(BM_circuit_signature)->Args({25, 1000})->Args({50, 1000})->Args({100, 10000});

static void BM_amplitude(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    auto c = oracle::random_clifford_circuit(n, static_cast<std::size_t>(state.range(1)), 13);
    BitVec zeros(n);
    for (auto _ : state) benchmark::DoNotOptimize(amplitude(c, zeros, zeros));
}
BENCHMARK(BM_amplitude)->Args({25, 1000})->Args({100, 10000});

static void BM_marginal_probability(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    auto c = oracle::random_clifford_circuit(n, static_cast<std::size_t>(state.range(1)), 17);
    BitVec zeros(n);
    std::vector<MeasuredBit> measured{{0, false}};
    for (auto _ : state) benchmark::DoNotOptimize(marginal_probability(c, zeros, measured));
}
BENCHMARK(BM_marginal_probability)->Args({25, 1000})->Args({50, 1000});

static void BM_compose(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    auto f = circuit_signature(oracle::random_clifford_circuit(n, 4 * n, 19));
    auto g = circuit_signature(oracle::random_clifford_circuit(n, 4 * n, 23));
    for (auto _ : state) benchmark::DoNotOptimize(compose(f, g));
}
BENCHMARK(BM_compose)->Arg(4)->Arg(16)->Arg(64);

BENCHMARK_MAIN();
