// Copyright 2025 The circpack Authors
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

#include "circpack/io.hpp"
#include "circpack/layering.hpp"
#include "circpack/packing.hpp"
#include "circpack/qasm.hpp"

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

namespace {

using namespace circpack;

const std::vector<Circuit>& fixture_pool() {
  static const std::vector<Circuit> pool = circuits_of(
      load_queue(std::filesystem::path(CIRCPACK_DATA_DIR) /
                 "queue_small.json"));
  return pool;
}

std::vector<Circuit> sampled_queue(int n, std::uint64_t seed = 0) {
  const auto& pool = fixture_pool();
  std::mt19937_64 engine(seed);
  std::vector<Circuit> queue;
  queue.reserve(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k) {
    Circuit circuit = pool[engine() % pool.size()];
    circuit.id = k;
    queue.push_back(std::move(circuit));
  }
  return queue;
}

void BM_PackCircPack(benchmark::State& state) {
  const auto queue = sampled_queue(static_cast<int>(state.range(0)));
  const DeviceTopology topology = make_topology({10, 10});
  for (auto _ : state) {
    benchmark::DoNotOptimize(pack_circpack(queue, topology));
  }
}
BENCHMARK(BM_PackCircPack)->Arg(20)->Arg(100)->Arg(200)->Arg(1000);

void BM_PackSkyline(benchmark::State& state) {
  const auto queue = sampled_queue(static_cast<int>(state.range(0)));
  const DeviceTopology topology = make_topology({10, 10});
  for (auto _ : state) {
    benchmark::DoNotOptimize(pack_generic_skyline(queue, topology));
  }
}
BENCHMARK(BM_PackSkyline)->Arg(200)->Arg(1000);

void BM_PackFifo(benchmark::State& state) {
  const auto queue = sampled_queue(static_cast<int>(state.range(0)));
  const DeviceTopology topology = make_topology({10, 10});
  for (auto _ : state) {
    benchmark::DoNotOptimize(pack_fifo(queue, topology));
  }
}
BENCHMARK(BM_PackFifo)->Arg(200)->Arg(1000);

void BM_AsapLayers(benchmark::State& state) {
  const std::string text =
      read_text_file(std::filesystem::path(CIRCPACK_DATA_DIR) /
                     "circuits" / "multiplier_n15.qasm");
  const Circuit circuit = qasm::parse_program(text, 0, "multiplier_n15");
  for (auto _ : state) {
    benchmark::DoNotOptimize(asap_layers(circuit.gates, circuit.width));
  }
}
BENCHMARK(BM_AsapLayers);

void BM_ParseProgram(benchmark::State& state) {
  const std::string text =
      read_text_file(std::filesystem::path(CIRCPACK_DATA_DIR) /
                     "circuits" / "multiplier_n15.qasm");
  for (auto _ : state) {
    benchmark::DoNotOptimize(qasm::parse_program(text, 0, "multiplier_n15"));
  }
}
BENCHMARK(BM_ParseProgram);

void BM_EmitCombined(benchmark::State& state) {
  const auto queue = fixture_pool();
  const DeviceTopology topology = make_topology({10, 10});
  const Schedule schedule = pack_circpack(queue, topology);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        qasm::emit_combined(schedule.batches.front(), queue, topology));
  }
}
BENCHMARK(BM_EmitCombined);

}  // namespace

BENCHMARK_MAIN();
