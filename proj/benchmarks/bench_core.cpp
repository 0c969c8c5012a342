// Copyright 2026 The qnnlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "qnnlab/architectures.hpp"
#include "qnnlab/expectation.hpp"
#include "qnnlab/gradients.hpp"
#include "qnnlab/theory.hpp"

namespace {

using namespace qnnlab;

std::vector<double> angles(int k, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 6.283185307179586);
    std::vector<double> out(static_cast<std::size_t>(k));
    for (double &a : out) {
        a = u(rng);
    }
    return out;
}

void BM_ApplyRy(benchmark::State &state) {
    const int n = static_cast<int>(state.range(0));
    StateVector s = StateVector::zeros(n);
    for (auto _ : state) {
        apply_ry(s, n / 2 + 1, 0.3);
        benchmark::DoNotOptimize(s.amplitudes().data());
    }
    state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << n));
}
BENCHMARK(BM_ApplyRy)->DenseRange(4, 20, 4);

void BM_RunTreeTensor(benchmark::State &state) {
    const int n = static_cast<int>(state.range(0));
    const CircuitSpec tt = build_tt(n);
    const auto theta = angles(tt.n_params, 1);
    const StateVector in = StateVector::zeros(n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_circuit(in, tt, theta));
    }
}
BENCHMARK(BM_RunTreeTensor)->RangeMultiplier(2)->Range(4, 16);

void BM_ShiftGradient(benchmark::State &state) {
    const int n = static_cast<int>(state.range(0));
    const Objective obj{build_tt(n), Observable::z1(n), StateVector::zeros(n)};
    const auto theta = angles(obj.circuit.n_params, 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(parameter_shift_grad(obj, theta));
    }
}
BENCHMARK(BM_ShiftGradient)->RangeMultiplier(2)->Range(4, 16);

void BM_ExactGridTT4(benchmark::State &state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(verify_gradient_norm_bound(
            TreeTensor{}, 4, StateVector::zeros(4), VerifyMode::exact()));
    }
}
BENCHMARK(BM_ExactGridTT4)->Unit(benchmark::kMillisecond);

void BM_MonteCarloGradNorm(benchmark::State &state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(verify_gradient_norm_bound(
            DeformedTreeTensor{}, n, StateVector::zeros(n),
            VerifyMode::monte_carlo(100, 3)));
    }
}
BENCHMARK(BM_MonteCarloGradNorm)->DenseRange(6, 12, 2)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
