// Copyright 2026 The qcnnlab Authors
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

#include "qcnn/decoder.hpp"
#include "qcnn/groundstate.hpp"

namespace {

void BM_SampleSyndromes(benchmark::State &state) {
    int n = static_cast<int>(state.range(0));
    auto flips = qcnn::FlipTable::get(qcnn::ClusterKind::ZXZ, n);
    qcnn::ChannelSpec ch{0.01, 0.01, 0.01};
    uint64_t k = 0;
    for (auto _ : state) {
        qcnn::ShotRng rng(7, k++);
        benchmark::DoNotOptimize(qcnn::sample_syndrome(*flips, ch, rng));
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_SampleSyndromes)->Arg(135)->Arg(1215);

void BM_DecodeTrace(benchmark::State &state) {
    int n = 1215;
    int depth = static_cast<int>(state.range(0));
    auto arch = qcnn::Architecture::make(qcnn::ClusterKind::ZXZ, qcnn::ArchStyle::AltXZ, depth);
    auto samples = qcnn::sample_syndromes_cluster(qcnn::ClusterKind::ZXZ, {0, 0, 0.03}, n, 64, 3);
    size_t k = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(qcnn::decode(samples[k++ % samples.size()], arch));
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_DecodeTrace)->Arg(1)->Arg(3)->Arg(5);

void BM_ApplyHamiltonian(benchmark::State &state) {
    qcnn::HamiltonianParams params{1.0, 0.3, 0.5, 0.7, static_cast<int>(state.range(0))};
    auto v = qcnn::StateVector::plus_state(params.n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(qcnn::apply_hamiltonian(params, v));
    }
}
BENCHMARK(BM_ApplyHamiltonian)->Arg(11)->Arg(15)->Arg(19);

}  // namespace

BENCHMARK_MAIN();
