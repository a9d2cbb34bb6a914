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

#include "circpack/metrics.hpp"

#include "circpack/errors.hpp"

#include <stdexcept>
#include <unordered_map>

namespace circpack {

std::optional<double> avg_utilization(const Schedule& schedule,
                                      int total_qubits) {
  if (schedule.total_makespan <= 0) {
    return std::nullopt;
  }
  long long used = 0;
  for (const Batch& batch : schedule.batches) {
    for (const Placement& placement : batch.placements) {
      used += placement.area();
    }
  }
  return static_cast<double>(used) /
         (static_cast<double>(total_qubits) *
          static_cast<double>(schedule.total_makespan));
}

double instantaneous_utilization(const Schedule& schedule, int total_qubits,
                                 long long t) {
  if (t < 0 || t >= schedule.total_makespan) {
    throw std::out_of_range("layer " + std::to_string(t) +
                            " is outside the schedule (makespan " +
                            std::to_string(schedule.total_makespan) + ")");
  }
  // Batches are laid end to end on the global time axis.
  long long offset = 0;
  for (const Batch& batch : schedule.batches) {
    if (t < offset + batch.makespan) {
      const long long local = t - offset;
      long long active = 0;
      for (const Placement& placement : batch.placements) {
        if (placement.layer_start <= local && local < placement.layer_end()) {
          active += placement.width;
        }
      }
      return static_cast<double>(active) / static_cast<double>(total_qubits);
    }
    offset += batch.makespan;
  }
  return 0.0;  // unreachable: t < total_makespan
}

double lrf(long long serial_layers, long long makespan) {
  if (serial_layers <= 0) {
    throw ConfigError("lrf needs a positive serial layer count");
  }
  if (makespan < 0 || makespan > serial_layers) {
    throw ConfigError("lrf needs serial_layers >= makespan >= 0, got " +
                      std::to_string(serial_layers) + " vs " +
                      std::to_string(makespan));
  }
  return 100.0 * static_cast<double>(serial_layers - makespan) /
         static_cast<double>(serial_layers);
}

long long estimate_shuttles(const Schedule& schedule,
                            const std::vector<Circuit>& circuits,
                            const DeviceTopology& topology) {
  std::unordered_map<int, const Circuit*> by_id;
  for (const Circuit& circuit : circuits) {
    by_id.emplace(circuit.id, &circuit);
  }

  long long shuttles = 0;
  for (const Batch& batch : schedule.batches) {
    for (const Placement& placement : batch.placements) {
      const auto it = by_id.find(placement.circuit_id);
      if (it == by_id.end()) {
        throw ConsistencyError("schedule references unknown circuit id " +
                               std::to_string(placement.circuit_id));
      }
      const int physical_start = placement.physical_qubit_start(topology);
      for (const Gate& gate : it->second->gates) {
        if (gate.kind != GateKind::TwoQubit) {
          continue;
        }
        const int a = topology.trap_of_physical(physical_start +
                                                gate.operands[0]);
        const int b = topology.trap_of_physical(physical_start +
                                                gate.operands[1]);
        if (a != b) {
          ++shuttles;
        }
      }
    }
  }
  return shuttles;
}

ScheduleReport schedule_report(const Schedule& schedule,
                               const std::vector<Circuit>& circuits,
                               const DeviceTopology& topology,
                               long long serial_reference_layers,
                               double seconds) {
  ScheduleReport report;
  report.algorithm = schedule.algorithm_tag;
  report.makespan = schedule.total_makespan;
  report.cutoff_count = schedule.cutoff_count;
  report.shuttles = estimate_shuttles(schedule, circuits, topology);
  report.avg_utilization =
      avg_utilization(schedule, topology.total_qubits).value_or(0.0);
  if (serial_reference_layers > 0) {
    report.lrf_percent = lrf(serial_reference_layers, schedule.total_makespan);
  }
  report.seconds = seconds;
  return report;
}

}  // namespace circpack
