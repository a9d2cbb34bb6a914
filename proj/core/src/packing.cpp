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

#include <algorithm>
#include <limits>
#include <numeric>

namespace circpack {

SkylineGrid SkylineGrid::for_topology(const DeviceTopology& topology) {
  SkylineGrid grid;
  grid.traps.reserve(topology.traps.size());
  for (int capacity : topology.traps) {
    grid.traps.emplace_back(static_cast<size_t>(capacity), 0);
  }
  return grid;
}

void SkylineGrid::place(int trap, int qubit_start, int width, int layer_end) {
  auto& frontier = traps[static_cast<size_t>(trap)];
  for (int q = qubit_start; q < qubit_start + width; ++q) {
    frontier[static_cast<size_t>(q)] = layer_end;
  }
}

int SkylineGrid::max_layer() const {
  int top = 0;
  for (const auto& frontier : traps) {
    for (int layer : frontier) {
      top = std::max(top, layer);
    }
  }
  return top;
}

void SkylineGrid::reset() {
  for (auto& frontier : traps) {
    std::fill(frontier.begin(), frontier.end(), 0);
  }
}

std::optional<SkylineFit> skyline_minimax(std::span<const int> frontier,
                                          int width) {
  const int n = static_cast<int>(frontier.size());
  if (width < 1 || width > n) {
    return std::nullopt;
  }
  int best_layer = std::numeric_limits<int>::max();
  int best_start = 0;
  for (int start = 0; start + width <= n; ++start) {
    int window_max = 0;
    for (int q = start; q < start + width; ++q) {
      window_max = std::max(window_max, frontier[static_cast<size_t>(q)]);
    }
    if (window_max < best_layer) {
      best_layer = window_max;
      best_start = start;
    }
  }
  return SkylineFit{best_layer, best_start};
}

std::string_view algorithm_name(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::CircPack:
      return "circpack";
    case Algorithm::Fifo:
      return "fifo";
    case Algorithm::Skyline:
      return "skyline";
    case Algorithm::Serial:
      return "serial";
  }
  return "unknown";
}

Algorithm algorithm_from_name(std::string_view name) {
  if (name == "circpack") return Algorithm::CircPack;
  if (name == "fifo") return Algorithm::Fifo;
  if (name == "skyline") return Algorithm::Skyline;
  if (name == "serial") return Algorithm::Serial;
  throw ConfigError("unknown packing algorithm '" + std::string(name) +
                    "' (expected circpack, fifo, skyline, or serial)");
}

namespace {

/// Width-descending order with ascending-id tie break, so equally wide
/// circuits keep a best-effort queue order.
std::vector<const Circuit*> sorted_by_width(
    const std::vector<Circuit>& circuits) {
  std::vector<const Circuit*> order;
  order.reserve(circuits.size());
  for (const Circuit& circuit : circuits) {
    order.push_back(&circuit);
  }
  std::sort(order.begin(), order.end(),
            [](const Circuit* a, const Circuit* b) {
              if (a->width != b->width) {
                return a->width > b->width;
              }
              return a->id < b->id;
            });
  return order;
}

double utilization_of(const std::vector<Batch>& batches, int total_qubits,
                      long long total_makespan) {
  if (total_makespan <= 0 || total_qubits <= 0) {
    return 0.0;
  }
  long long used = 0;
  for (const Batch& batch : batches) {
    for (const Placement& placement : batch.placements) {
      used += placement.area();
    }
  }
  return static_cast<double>(used) /
         (static_cast<double>(total_qubits) *
          static_cast<double>(total_makespan));
}

Schedule finish_schedule(std::vector<Batch> batches, int cutoff_count,
                         const DeviceTopology& topology,
                         std::string algorithm_tag) {
  Schedule schedule;
  schedule.total_makespan = 0;
  for (const Batch& batch : batches) {
    schedule.total_makespan += batch.makespan;
  }
  schedule.cutoff_count = cutoff_count;
  schedule.avg_utilization =
      utilization_of(batches, topology.total_qubits, schedule.total_makespan);
  schedule.batches = std::move(batches);
  schedule.algorithm_tag = std::move(algorithm_tag);
  return schedule;
}

Placement make_placement(const Circuit& circuit, int trap, int qubit_start,
                         int layer_start) {
  Placement placement;
  placement.circuit_id = circuit.id;
  placement.trap_index = trap;
  placement.qubit_start = qubit_start;
  placement.layer_start = layer_start;
  placement.width = circuit.width;
  placement.depth = circuit.depth;
  return placement;
}

/// Shared body of the two trap-oblivious packers: skyline search over the
/// concatenated frontier of all traps; windows may span trap boundaries.
Schedule pack_global(const std::vector<const Circuit*>& order,
                     const DeviceTopology& topology,
                     std::string algorithm_tag) {
  std::vector<int> frontier(static_cast<size_t>(topology.total_qubits), 0);

  Batch batch;
  batch.index = 0;
  for (const Circuit* circuit : order) {
    const auto fit = skyline_minimax(frontier, circuit->width);
    if (!fit) {
      throw OversizedCircuitError(
          "circuit " + std::to_string(circuit->id) + " ('" + circuit->name +
          "') needs " + std::to_string(circuit->width) +
          " qubits, device has " + std::to_string(topology.total_qubits));
    }
    const int trap = topology.trap_of_physical(fit->qubit_start);
    batch.placements.push_back(make_placement(
        *circuit, trap, fit->qubit_start - topology.trap_offset(trap),
        fit->layer_start));
    batch.makespan =
        std::max(batch.makespan, fit->layer_start + circuit->depth);
    batch.two_qubit_total += circuit->two_qubit_count;
    for (int q = fit->qubit_start; q < fit->qubit_start + circuit->width;
         ++q) {
      frontier[static_cast<size_t>(q)] = fit->layer_start + circuit->depth;
    }
  }

  std::vector<Batch> batches;
  if (!batch.placements.empty()) {
    batches.push_back(std::move(batch));
  }
  return finish_schedule(std::move(batches), 0, topology,
                         std::move(algorithm_tag));
}

}  // namespace

Schedule pack_circpack(const std::vector<Circuit>& circuits,
                       const DeviceTopology& topology) {
  SkylineGrid grid = SkylineGrid::for_topology(topology);
  std::vector<Batch> batches;
  Batch batch;
  batch.index = 0;
  long long running_two_qubit = 0;

  auto seal_batch = [&] {
    batch.makespan = 0;
    for (const Placement& placement : batch.placements) {
      batch.makespan = std::max(batch.makespan, placement.layer_end());
    }
    batch.two_qubit_total = running_two_qubit;
    batches.push_back(std::move(batch));
    batch = Batch{};
    batch.index = static_cast<int>(batches.size());
    grid.reset();
    running_two_qubit = 0;
  };

  for (const Circuit* circuit : sorted_by_width(circuits)) {
    int best_layer = std::numeric_limits<int>::max();
    int best_trap = -1;
    int best_qubit = 0;
    for (int trap = 0; trap < topology.trap_count(); ++trap) {
      const auto fit = skyline_minimax(grid.traps[static_cast<size_t>(trap)],
                                       circuit->width);
      if (fit && fit->layer_start < best_layer) {
        best_layer = fit->layer_start;
        best_trap = trap;
        best_qubit = fit->qubit_start;
      }
    }
    if (best_trap < 0) {
      throw OversizedCircuitError(
          "circuit " + std::to_string(circuit->id) + " ('" + circuit->name +
          "') needs " + std::to_string(circuit->width) +
          " qubits, wider than every trap (max " +
          std::to_string(topology.max_trap_capacity()) + ")");
    }

    batch.placements.push_back(
        make_placement(*circuit, best_trap, best_qubit, best_layer));
    grid.place(best_trap, best_qubit, circuit->width,
               best_layer + circuit->depth);
    running_two_qubit += circuit->two_qubit_count;
    if (running_two_qubit >= topology.alpha) {
      seal_batch();
    }
  }
  if (!batch.placements.empty()) {
    seal_batch();
  }

  const int cutoffs =
      batches.empty() ? 0 : static_cast<int>(batches.size()) - 1;
  return finish_schedule(std::move(batches), cutoffs, topology, "circpack");
}

Schedule pack_serial(const std::vector<Circuit>& circuits,
                     const DeviceTopology& topology) {
  std::vector<Batch> batches;
  batches.reserve(circuits.size());

  for (const Circuit& circuit : circuits) {
    if (circuit.width > topology.total_qubits) {
      throw OversizedCircuitError(
          "circuit " + std::to_string(circuit.id) + " ('" + circuit.name +
          "') needs " + std::to_string(circuit.width) +
          " qubits, device has " + std::to_string(topology.total_qubits));
    }
    // First trap that fits; global qubit 0 if only a spanning fit exists.
    int trap = 0;
    for (int t = 0; t < topology.trap_count(); ++t) {
      if (circuit.width <= topology.traps[static_cast<size_t>(t)]) {
        trap = t;
        break;
      }
    }

    Batch batch;
    batch.index = static_cast<int>(batches.size());
    batch.placements.push_back(make_placement(circuit, trap, 0, 0));
    batch.makespan = circuit.depth;
    batch.two_qubit_total = circuit.two_qubit_count;
    batches.push_back(std::move(batch));
  }

  // One cutoff per circuit: the serial baseline resets the device after
  // every job.
  const int cutoffs = static_cast<int>(batches.size());
  return finish_schedule(std::move(batches), cutoffs, topology, "serial");
}

Schedule pack_fifo(const std::vector<Circuit>& circuits,
                   const DeviceTopology& topology) {
  std::vector<const Circuit*> order;
  order.reserve(circuits.size());
  for (const Circuit& circuit : circuits) {
    order.push_back(&circuit);
  }
  return pack_global(order, topology, "fifo");
}

Schedule pack_generic_skyline(const std::vector<Circuit>& circuits,
                              const DeviceTopology& topology) {
  return pack_global(sorted_by_width(circuits), topology, "skyline");
}

Schedule pack(Algorithm algorithm, const std::vector<Circuit>& circuits,
              const DeviceTopology& topology) {
  switch (algorithm) {
    case Algorithm::CircPack:
      return pack_circpack(circuits, topology);
    case Algorithm::Fifo:
      return pack_fifo(circuits, topology);
    case Algorithm::Skyline:
      return pack_generic_skyline(circuits, topology);
    case Algorithm::Serial:
      return pack_serial(circuits, topology);
  }
  throw ConfigError("unhandled packing algorithm");
}

}  // namespace circpack
