// Copyright 2026 The wsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Parallel kernels against their serial references.

#include <benchmark/benchmark.h>

#include <random>

#include "wsim/boolean_fourier.hpp"
#include "wsim/oracle.hpp"
#include "wsim/sampling.hpp"

using namespace wsim;

namespace {

const Sampler kUniform = [](Rng &r) { return BitString(20, r.next_u64()); };
const Evaluator kSign = [](const BitString &x) { return Amplitude(x.popcount() % 2 ? -1.0 : 1.0, 0.0); };

template <bool Parallel>
void accumulate(benchmark::State &state) {
    const auto count = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) {
        Amplitude sum = Parallel ? kernels::accumulate_parallel(count, kUniform, kSign, RandomStream{1, 0}, 1.0)
                                 : kernels::accumulate_serial(count, kUniform, kSign, RandomStream{1, 0}, 1.0);
        benchmark::DoNotOptimize(sum);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void apply_gate(benchmark::State &state) {
    const int n = static_cast<int>(state.range(0));
    DenseState s = DenseState::basis(BitString(n, 0));
    const Gate g = Gate::two(GateKind::CPhase, 0, n - 1, 0.3);
    const Gate h = Gate::single(GateKind::H, n / 2);
    for (auto _ : state) {
        if (Parallel) {
            kernels::apply_gate_parallel(h, s);
            kernels::apply_gate_parallel(g, s);
        } else {
            kernels::apply_gate_serial(h, s);
            kernels::apply_gate_serial(g, s);
        }
        benchmark::DoNotOptimize(s.amps.data());
    }
}

template <bool Parallel>
void walsh_hadamard(benchmark::State &state) {
    std::mt19937_64 rng(1);
    std::vector<double> v(std::size_t{1} << state.range(0));
    for (double &x : v) x = static_cast<double>(rng() % 3) - 1.0;
    for (auto _ : state) {
        if (Parallel) kernels::walsh_hadamard_parallel(v);
        else kernels::walsh_hadamard_serial(v);
        benchmark::DoNotOptimize(v.data());
    }
}

}  // namespace

BENCHMARK(accumulate<false>)->Arg(1 << 20);
BENCHMARK(accumulate<true>)->Arg(1 << 20);
BENCHMARK(apply_gate<false>)->Arg(18);
BENCHMARK(apply_gate<true>)->Arg(18);
BENCHMARK(walsh_hadamard<false>)->Arg(20);
BENCHMARK(walsh_hadamard<true>)->Arg(20);

BENCHMARK_MAIN();
