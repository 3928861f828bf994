// Copyright 2026 The qcomm Authors
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

#include <benchmark/benchmark.h>

#include "qcomm/harness.h"
#include "qcomm/pauli.h"
#include "qcomm/transform.h"

using namespace qcomm;

static void BM_fwht(benchmark::State &state) {
    std::size_t n = static_cast<std::size_t>(state.range(0));
    RandomStream rng{SharedRandomness(1)};
    std::vector<std::int64_t> v(std::size_t{1} << n);
    for (auto &x : v) {
        x = static_cast<std::int64_t>(rng.next_below(1000));
    }
    for (auto _ : state) {
        fwht_in_place(std::span<std::int64_t>(v));
        benchmark::DoNotOptimize(v.data());
        for (auto &x : v) {
            x >>= n;
        }
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(v.size()));
}
BENCHMARK(BM_fwht)->Arg(10)->Arg(16)->Arg(20);

static void BM_hamming(benchmark::State &state) {
    RandomStream rng{SharedRandomness(2)};
    auto a = rng.next_bits(static_cast<std::size_t>(state.range(0)));
    auto b = rng.next_bits(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(hamming(a, b));
    }
}
BENCHMARK(BM_hamming)->Arg(192)->Arg(1 << 16);

static void BM_encode_alice(benchmark::State &state) {
    auto params = GhdParams::make(0.3);
    SharedRandomness sr(3);
    auto strings = ghd_public_strings(params, sr);
    RandomStream rng{SharedRandomness(4)};
    auto x = rng.next_bits(params.gamma);
    for (auto _ : state) {
        benchmark::DoNotOptimize(encode_alice(x, params, strings));
    }
}
BENCHMARK(BM_encode_alice);

static void BM_pauli_expectation(benchmark::State &state) {
    std::size_t n = static_cast<std::size_t>(state.range(0));
    RandomStream rng{SharedRandomness(5)};
    std::vector<std::int64_t> nums(std::size_t{1} << n);
    for (auto &x : nums) {
        x = static_cast<std::int64_t>(rng.next_below(64)) - 32;
    }
    nums[0] = 1;
    auto psi = ExactState::dense(n, nums);
    BitVector z = rng.next_bits(n);
    BitVector x(n);
    x.assign(n - 1, !z.test(n - 1));
    PauliMask p(z, x);
    for (auto _ : state) {
        benchmark::DoNotOptimize(expectation(psi, p));
    }
}
BENCHMARK(BM_pauli_expectation)->Arg(10)->Arg(16);

static void BM_protocol_trial(benchmark::State &state) {
    ExperimentConfig cfg;
    cfg.protocol = static_cast<ProtocolKind>(state.range(0));
    cfg.qubits = cfg.protocol == ProtocolKind::ObservablePauli ? 256 : cfg.protocol == ProtocolKind::ObservableGeneral ? 8 : 12;
    cfg.epsilon = 0.3;
    auto pcfg = cfg.protocol_config();
    double accuracy = cfg.resolved_accuracy();
    std::size_t t = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_trial(cfg, pcfg, accuracy, t++));
    }
    state.SetLabel(std::string(protocol_name(cfg.protocol)));
}
BENCHMARK(BM_protocol_trial)->DenseRange(1, 5);
BENCHMARK_MAIN();
