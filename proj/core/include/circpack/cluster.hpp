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

#pragma once

#include "circpack/model.hpp"
#include "circpack/packing.hpp"

#include <vector>

namespace circpack {

/// Phase-1 balanced assignment: circuits are processed in input order and
/// each goes to the lowest-index worker whose running area load is minimal.
/// Throws ConfigError when worker_count < 1.
WorkerAssignment balanced_assign(const std::vector<Circuit>& circuits,
                                 int worker_count);

/// Per-worker result of a cluster run.
struct WorkerSchedule {
  Schedule schedule;
  std::vector<int> circuit_ids;  // circuits routed to this worker
  double pack_seconds = 0.0;     // wall-clock time of the packer call
};

/// Balanced assignment followed by independent per-worker packing. Workers
/// are packed concurrently; results are ordered by worker index and are
/// identical to a sequential run.
///
/// Workers may be heterogeneous: a circuit too wide for the minimum-load
/// worker falls back to the next-lowest-load worker that fits it. A circuit
/// no worker can fit raises OversizedCircuitError.
std::vector<WorkerSchedule> schedule_cluster(
    const std::vector<Circuit>& circuits,
    const std::vector<DeviceTopology>& topologies, Algorithm algorithm);

}  // namespace circpack
