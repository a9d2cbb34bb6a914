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

#include "circpack/cluster.hpp"

#include "circpack/errors.hpp"

#include <algorithm>
#include <chrono>
#include <future>
#include <unordered_map>

namespace circpack {

namespace {

/// Greedy min-load assignment with a per-worker feasibility predicate.
/// Circuits go, in input order, to the lowest-index feasible worker whose
/// running area load is minimal among feasible workers.
template <typename Fits>
WorkerAssignment assign_greedy(const std::vector<Circuit>& circuits,
                               int worker_count, Fits fits) {
  if (worker_count < 1) {
    throw ConfigError("worker count must be >= 1");
  }
  WorkerAssignment assignment;
  assignment.circuit_ids.resize(static_cast<size_t>(worker_count));
  assignment.loads.assign(static_cast<size_t>(worker_count), 0);

  for (const Circuit& circuit : circuits) {
    int chosen = -1;
    for (int w = 0; w < worker_count; ++w) {
      if (!fits(circuit, w)) {
        continue;
      }
      if (chosen < 0 || assignment.loads[static_cast<size_t>(w)] <
                            assignment.loads[static_cast<size_t>(chosen)]) {
        chosen = w;
      }
    }
    if (chosen < 0) {
      throw OversizedCircuitError("circuit " + std::to_string(circuit.id) +
                                  " ('" + circuit.name +
                                  "') does not fit any worker");
    }
    assignment.circuit_ids[static_cast<size_t>(chosen)].push_back(circuit.id);
    assignment.loads[static_cast<size_t>(chosen)] += circuit.area;
  }
  return assignment;
}

}  // namespace

WorkerAssignment balanced_assign(const std::vector<Circuit>& circuits,
                                 int worker_count) {
  return assign_greedy(circuits, worker_count,
                       [](const Circuit&, int) { return true; });
}

std::vector<WorkerSchedule> schedule_cluster(
    const std::vector<Circuit>& circuits,
    const std::vector<DeviceTopology>& topologies, Algorithm algorithm) {
  const int worker_count = static_cast<int>(topologies.size());

  const auto fits = [&](const Circuit& circuit, int worker) {
    const DeviceTopology& topology = topologies[static_cast<size_t>(worker)];
    // CircPack confines every placement to one trap; the baselines only
    // need the device to be wide enough overall.
    if (algorithm == Algorithm::CircPack) {
      return circuit.width <= topology.max_trap_capacity();
    }
    return circuit.width <= topology.total_qubits;
  };
  const WorkerAssignment assignment =
      assign_greedy(circuits, worker_count, fits);

  std::unordered_map<int, const Circuit*> by_id;
  for (const Circuit& circuit : circuits) {
    by_id.emplace(circuit.id, &circuit);
  }

  const auto pack_worker = [&](int w) -> WorkerSchedule {
    std::vector<Circuit> assigned;
    assigned.reserve(assignment.circuit_ids[static_cast<size_t>(w)].size());
    for (int id : assignment.circuit_ids[static_cast<size_t>(w)]) {
      assigned.push_back(*by_id.at(id));
    }
    const auto start = std::chrono::steady_clock::now();
    Schedule schedule;
    try {
      schedule = pack(algorithm, assigned, topologies[static_cast<size_t>(w)]);
    } catch (const Error& error) {
      throw Error("worker " + std::to_string(w) + ": " + error.what());
    }
    const auto stop = std::chrono::steady_clock::now();

    WorkerSchedule result;
    result.schedule = std::move(schedule);
    result.circuit_ids = assignment.circuit_ids[static_cast<size_t>(w)];
    result.pack_seconds = std::chrono::duration<double>(stop - start).count();
    return result;
  };

  // Workers are independent subproblems; pack them concurrently and merge
  // by index.
  std::vector<std::future<WorkerSchedule>> pending;
  pending.reserve(static_cast<size_t>(worker_count));
  for (int w = 0; w < worker_count; ++w) {
    pending.push_back(std::async(std::launch::async, pack_worker, w));
  }
  std::vector<WorkerSchedule> results;
  results.reserve(static_cast<size_t>(worker_count));
  for (auto& future : pending) {
    results.push_back(future.get());
  }
  return results;
}

}  // namespace circpack
