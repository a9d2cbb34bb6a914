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

#include "circpack/packing.hpp"

#include "circpack/errors.hpp"
#include "circpack/metrics.hpp"
#include "testutil.hpp"

#include <doctest.h>

#include <random>

namespace circpack {
namespace {

using testutil::chain_circuit;

Circuit rect(int id, int width, int depth, long long two_qubit = 0) {
  return make_circuit_with_metrics(id, "rect", width, {}, depth, two_qubit);
}

TEST_CASE("skyline_minimax on an empty frontier") {
  const std::vector<int> frontier = {0, 0, 0, 0, 0};
  const auto fit = skyline_minimax(frontier, 3);
  REQUIRE(fit);
  CHECK(fit->layer_start == 0);
  CHECK(fit->qubit_start == 0);
}

TEST_CASE("skyline_minimax picks the lowest window") {
  // windows of width 2: maxima 5,5,2,2 -> first minimum at qubit 2
  const std::vector<int> frontier = {5, 5, 2, 2, 2};
  const auto fit = skyline_minimax(frontier, 2);
  REQUIRE(fit);
  CHECK(fit->layer_start == 2);
  CHECK(fit->qubit_start == 2);
}

TEST_CASE("skyline_minimax signals does-not-fit") {
  const std::vector<int> frontier = {3};
  CHECK(!skyline_minimax(frontier, 2));
}

TEST_CASE("skyline_minimax agrees with brute-force enumeration") {
  std::mt19937 rng(99);
  for (int round = 0; round < 500; ++round) {
    const int n = 1 + static_cast<int>(rng() % 24);
    std::vector<int> frontier(static_cast<size_t>(n));
    for (int& layer : frontier) {
      layer = static_cast<int>(rng() % 50);
    }
    const int width = 1 + static_cast<int>(rng() % (n + 2));
    const auto fast = skyline_minimax(frontier, width);
    const auto slow = testutil::brute_force_minimax(frontier, width);
    REQUIRE(fast.has_value() == slow.has_value());
    if (fast) {
      CHECK(fast->layer_start == slow->layer_start);
      CHECK(fast->qubit_start == slow->qubit_start);
    }
  }
}

TEST_CASE("circpack places a single circuit at the origin") {
  const DeviceTopology topology = make_topology({10, 10});
  const std::vector<Circuit> circuits = {rect(0, 4, 7, 3)};
  const Schedule schedule = pack_circpack(circuits, topology);
  REQUIRE(schedule.batches.size() == 1);
  REQUIRE(schedule.batches[0].placements.size() == 1);
  const Placement& placement = schedule.batches[0].placements[0];
  CHECK(placement.trap_index == 0);
  CHECK(placement.qubit_start == 0);
  CHECK(placement.layer_start == 0);
  CHECK(schedule.total_makespan == 7);
  CHECK(schedule.cutoff_count == 0);
}

TEST_CASE("circpack seals batches on the running 2q count") {
  // six width-1 circuits with 60 two-qubit gates each, alpha 170:
  // running counts 60,120,180 -> seal; repeat -> two batches of three
  const DeviceTopology topology = make_topology({10, 10});
  std::vector<Circuit> circuits;
  for (int i = 0; i < 6; ++i) {
    circuits.push_back(rect(i, 1, 5, 60));
  }
  const Schedule schedule = pack_circpack(circuits, topology);
  REQUIRE(schedule.batches.size() == 2);
  CHECK(schedule.batches[0].placements.size() == 3);
  CHECK(schedule.batches[1].placements.size() == 3);
  CHECK(schedule.batches[0].two_qubit_total == 180);
  CHECK(schedule.cutoff_count == 1);
}

TEST_CASE("a circuit with C >= alpha occupies a batch alone") {
  DeviceTopology topology = make_topology({10, 10}, 50);
  std::vector<Circuit> circuits = {rect(0, 2, 5, 60), rect(1, 2, 5, 1),
                                   rect(2, 2, 5, 1)};
  const Schedule schedule = pack_circpack(circuits, topology);
  REQUIRE(schedule.batches.size() == 2);
  CHECK(schedule.batches[0].placements.size() == 1);
  CHECK(schedule.batches[0].two_qubit_total == 60);
}

TEST_CASE("circpack rejects circuits wider than every trap") {
  const DeviceTopology topology = make_topology({10, 10});
  const std::vector<Circuit> circuits = {rect(0, 12, 5)};
  CHECK_THROWS_AS(pack_circpack(circuits, topology), OversizedCircuitError);
}

TEST_CASE("serial sums depths and reports one cutoff per circuit") {
  const DeviceTopology topology = make_topology({10, 10});
  const std::vector<Circuit> circuits = {rect(0, 2, 16), rect(1, 3, 19),
                                         rect(2, 3, 18)};
  const Schedule schedule = pack_serial(circuits, topology);
  CHECK(schedule.total_makespan == 53);
  CHECK(schedule.cutoff_count == 3);
  CHECK(schedule.batches.size() == 3);
  for (const Batch& batch : schedule.batches) {
    CHECK(batch.placements.size() == 1);
    CHECK(batch.placements[0].layer_start == 0);
  }
}

TEST_CASE("serial picks the first trap that fits") {
  const DeviceTopology topology = make_topology({5, 10});
  const std::vector<Circuit> circuits = {rect(0, 7, 4), rect(1, 12, 4)};
  const Schedule schedule = pack_serial(circuits, topology);
  // width 7 skips the 5-qubit trap
  CHECK(schedule.batches[0].placements[0].trap_index == 1);
  CHECK(schedule.batches[0].placements[0].physical_qubit_start(topology) == 5);
  // width 12 fits no single trap and falls back to global qubit 0
  CHECK(schedule.batches[1].placements[0].trap_index == 0);
  CHECK(schedule.batches[1].placements[0].physical_qubit_start(topology) == 0);
}

TEST_CASE("serial handles the empty queue") {
  const DeviceTopology topology = make_topology({10, 10});
  const Schedule schedule = pack_serial({}, topology);
  CHECK(schedule.batches.empty());
  CHECK(schedule.total_makespan == 0);
  CHECK(schedule.cutoff_count == 0);
}

TEST_CASE("fifo keeps arrival order and spans traps") {
  const DeviceTopology topology = make_topology({10, 10});

  SUBCASE("two width-10 circuits side by side") {
    const std::vector<Circuit> circuits = {rect(0, 10, 5), rect(1, 10, 5)};
    const Schedule schedule = pack_fifo(circuits, topology);
    REQUIRE(schedule.batches.size() == 1);
    const auto& placements = schedule.batches[0].placements;
    CHECK(placements[0].layer_start == 0);
    CHECK(placements[1].layer_start == 0);
    CHECK(placements[1].trap_index == 1);
    CHECK(schedule.total_makespan == 5);
  }

  SUBCASE("a width-12 circuit crosses the trap boundary") {
    const std::vector<Circuit> circuits = {rect(0, 12, 5)};
    const Schedule schedule = pack_fifo(circuits, topology);
    const Placement& placement = schedule.batches[0].placements[0];
    CHECK(placement.physical_qubit_start(topology) == 0);
    CHECK(placement.width == 12);  // runs into trap 1
  }

  SUBCASE("a later narrow circuit slots beside an earlier wide one") {
    const std::vector<Circuit> circuits = {rect(0, 19, 5), rect(1, 1, 5)};
    const Schedule schedule = pack_fifo(circuits, topology);
    const Placement& placement = schedule.batches[0].placements[1];
    CHECK(placement.layer_start == 0);
    CHECK(placement.physical_qubit_start(topology) == 19);
  }

  SUBCASE("width beyond the device is rejected") {
    const std::vector<Circuit> circuits = {rect(0, 21, 5)};
    CHECK_THROWS_AS(pack_fifo(circuits, topology), OversizedCircuitError);
  }
}

TEST_CASE("generic skyline sorts like circpack but packs globally") {
  const DeviceTopology topology = make_topology({10, 10});
  const std::vector<Circuit> circuits = {rect(0, 3, 10), rect(1, 8, 4),
                                         rect(2, 5, 6)};
  const Schedule schedule = pack_generic_skyline(circuits, topology);
  REQUIRE(schedule.batches.size() == 1);
  // widest first: circuit 1 (8), then 2 (5), then 0 (3)
  CHECK(schedule.batches[0].placements[0].circuit_id == 1);
  CHECK(schedule.batches[0].placements[1].circuit_id == 2);
  CHECK(schedule.batches[0].placements[2].circuit_id == 0);
  CHECK(schedule.cutoff_count == 0);
}

TEST_CASE("empty queues give empty schedules for every packer") {
  const DeviceTopology topology = make_topology({10, 10});
  for (const Algorithm algorithm :
       {Algorithm::CircPack, Algorithm::Fifo, Algorithm::Skyline,
        Algorithm::Serial}) {
    const Schedule schedule = pack(algorithm, {}, topology);
    CHECK(schedule.batches.empty());
    CHECK(schedule.total_makespan == 0);
  }
}

TEST_CASE("algorithm names round-trip") {
  for (const Algorithm algorithm :
       {Algorithm::CircPack, Algorithm::Fifo, Algorithm::Skyline,
        Algorithm::Serial}) {
    CHECK(algorithm_from_name(algorithm_name(algorithm)) == algorithm);
  }
  CHECK_THROWS_AS(algorithm_from_name("maxrects"), ConfigError);
}

TEST_CASE("packing feasibility properties on random fixture queues") {
  const std::vector<Circuit> pool = testutil::small_fixtures();
  const std::vector<DeviceTopology> topologies = {make_topology({10, 10}),
                                                  make_topology({5, 5, 5, 5})};
  std::mt19937_64 seeds(4242);
  for (int round = 0; round < 40; ++round) {
    const int size = 5 + static_cast<int>(seeds() % 60);
    const std::vector<Circuit> queue =
        testutil::sample_pool(pool, size, seeds());
    for (const DeviceTopology& topology : topologies) {
      long long serial_span = 0;
      for (const Circuit& circuit : queue) serial_span += circuit.depth;

      for (const Algorithm algorithm :
           {Algorithm::CircPack, Algorithm::Fifo, Algorithm::Skyline,
            Algorithm::Serial}) {
        const Schedule schedule = pack(algorithm, queue, topology);
        const auto occupancy = testutil::check_occupancy(schedule, topology);
        CHECK_MESSAGE(occupancy.overlap_free, occupancy.detail);
        CHECK(occupancy.within_device);
        CHECK(testutil::ids_complete(schedule, queue));
        // deterministic: repacking gives the identical schedule
        CHECK(pack(algorithm, queue, topology) == schedule);

        if (algorithm == Algorithm::CircPack) {
          CHECK(occupancy.trap_confined);
          CHECK(testutil::cutoff_respected(schedule, queue, topology.alpha));
          CHECK(schedule.total_makespan <= serial_span);
        }

        // stored utilization equals the area ratio recomputed cell by cell
        if (schedule.total_makespan > 0) {
          const double cells =
              static_cast<double>(occupancy.occupied_cells) /
              (static_cast<double>(topology.total_qubits) *
               static_cast<double>(schedule.total_makespan));
          CHECK(schedule.avg_utilization ==
                doctest::Approx(cells).epsilon(1e-12));
        }
      }
    }
  }
}

TEST_CASE("global windows never lose to trap-confined windows") {
  // same sort order, wider choice of windows, no cutoffs
  const std::vector<Circuit> pool = testutil::small_fixtures();
  std::mt19937_64 seeds(7);
  const DeviceTopology topology = make_topology({10, 10});
  for (int round = 0; round < 20; ++round) {
    const std::vector<Circuit> queue =
        testutil::sample_pool(pool, 30, seeds());
    const Schedule sky = pack_generic_skyline(queue, topology);
    const Schedule cp = pack_circpack(queue, topology);
    CHECK(sky.total_makespan <= cp.total_makespan);
  }
}

TEST_CASE("a single one-qubit trap stacks circuits in time") {
  const DeviceTopology topology = make_topology({1});
  const std::vector<Circuit> circuits = {rect(0, 1, 4), rect(1, 1, 9)};
  const Schedule schedule = pack_circpack(circuits, topology);
  REQUIRE(schedule.batches.size() == 1);
  CHECK(schedule.total_makespan == 13);
  CHECK(schedule.avg_utilization == doctest::Approx(1.0));
}

TEST_CASE("circuits without 2q gates never trip the cutoff") {
  // the running count only advances on two-qubit gates, so alpha=1 still
  // leaves measurement-only circuits in one shared batch
  const DeviceTopology topology = make_topology({10, 10}, 1);
  const std::vector<Circuit> circuits = {rect(0, 2, 3, 0), rect(1, 2, 3, 0),
                                         rect(2, 2, 3, 0)};
  const Schedule schedule = pack_circpack(circuits, topology);
  CHECK(schedule.batches.size() == 1);
  CHECK(schedule.cutoff_count == 0);
}

TEST_CASE("cutoff property across alpha values") {
  const std::vector<Circuit> pool = testutil::small_fixtures();
  const std::vector<Circuit> queue = testutil::sample_pool(pool, 50, 11);
  for (const int alpha : {1, 50, 170}) {
    const DeviceTopology topology = make_topology({10, 10}, alpha);
    const Schedule schedule = pack_circpack(queue, topology);
    CHECK(testutil::cutoff_respected(schedule, queue, alpha));
    if (alpha == 1) {
      // every placement trips the cutoff: one batch per circuit
      CHECK(schedule.batches.size() == queue.size());
    }
  }
}

TEST_CASE("chain circuits pack like their declared rectangles") {
  const DeviceTopology topology = make_topology({10, 10});
  const std::vector<Circuit> circuits = {chain_circuit(0, 4, 20, 10),
                                         chain_circuit(1, 6, 15, 8)};
  CHECK(circuits[0].depth == 20);
  CHECK(circuits[0].two_qubit_count == 10);
  const Schedule schedule = pack_circpack(circuits, topology);
  CHECK(testutil::check_occupancy(schedule, topology).overlap_free);
  CHECK(schedule.total_makespan == 20);  // side by side in trap 0
}

}  // namespace
}  // namespace circpack
