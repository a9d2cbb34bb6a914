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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace circpack {

enum class GateKind { OneQubit, TwoQubit, Measure, Reset, Barrier };

/// One quantum operation on logical qubits of a single circuit.
///
/// Parameter expressions (e.g. the "pi/4" in rz(pi/4)) are carried verbatim
/// in `params`; they are never evaluated.
struct Gate {
  GateKind kind = GateKind::OneQubit;
  std::string name;                    // mnemonic, e.g. "h", "cx", "measure"
  std::string params;                  // opaque parameter text, may be empty
  std::vector<int> operands;           // logical qubit indices
  std::optional<int> classical_target; // measure only

  bool operator==(const Gate&) const = default;
};

/// A job in the queue: an ordered gate list plus the derived rectangle
/// metrics. Width is the rectangle height, depth the rectangle width.
///
/// Instances are built through make_circuit() (metrics derived from the
/// gates) or make_circuit_with_metrics() (metrics pinned by fixture
/// metadata); they are immutable by convention afterwards.
struct Circuit {
  int id = 0;
  std::string name;
  int width = 0;                 // qubits required
  std::vector<Gate> gates;       // source order
  int depth = 0;                 // ASAP layer count
  long long two_qubit_count = 0; // number of two-qubit gates
  long long area = 0;            // width * depth
  std::optional<std::string> ideal_outcome; // noiseless result bitstring
};

/// Validates the gate list against `width`, derives depth / two-qubit count /
/// area, and returns the finished circuit.
///
/// Throws MalformedCircuitError for out-of-range operands, duplicate
/// two-qubit operands, or a gate list with no layers (width < 1, or only
/// barriers).
Circuit make_circuit(int id, std::string name, int width,
                     std::vector<Gate> gates,
                     std::optional<std::string> ideal_outcome = std::nullopt);

/// Same validation as make_circuit(), but the stored metrics come from the
/// caller instead of the gate list. Used when a queue manifest pins
/// post-compilation metrics for a fixture.
Circuit make_circuit_with_metrics(
    int id, std::string name, int width, std::vector<Gate> gates, int depth,
    long long two_qubit_count,
    std::optional<std::string> ideal_outcome = std::nullopt);

/// A modular trapped-ion device: ordered traps with per-trap qubit
/// capacities and the two-qubit-gate cutoff threshold alpha.
struct DeviceTopology {
  enum class Layout { Linear };

  std::vector<int> traps;  // qubits per trap
  int total_qubits = 0;    // sum of capacities
  int alpha = 170;         // batch cutoff on the running two-qubit gate count
  Layout layout = Layout::Linear;

  int trap_count() const { return static_cast<int>(traps.size()); }
  int max_trap_capacity() const;
  /// Global index of the first qubit of `trap`.
  int trap_offset(int trap) const;
  /// Trap containing global qubit index `physical`.
  int trap_of_physical(int physical) const;
};

/// Validates capacities (>= 1 each) and alpha (>= 1) and fills the derived
/// total. Throws ConfigError on violation.
DeviceTopology make_topology(std::vector<int> trap_capacities,
                             int alpha = 170);

/// One circuit's position in the qubit-time grid of a batch.
///
/// `qubit_start` is relative to `trap_index`. Trap-oblivious packers may
/// produce placements that extend past the owning trap; `trap_index` then
/// identifies the trap containing the first physical qubit.
struct Placement {
  int circuit_id = 0;
  int trap_index = 0;
  int qubit_start = 0;  // within-trap offset
  int layer_start = 0;
  int width = 0;        // copies of the circuit rectangle, so a schedule
  int depth = 0;        // file is self-contained

  int layer_end() const { return layer_start + depth; }
  long long area() const {
    return static_cast<long long>(width) * static_cast<long long>(depth);
  }
  int physical_qubit_start(const DeviceTopology& topology) const {
    return topology.trap_offset(trap_index) + qubit_start;
  }

  bool operator==(const Placement&) const = default;
};

/// A cutoff-delimited sub-schedule: non-overlapping placements executed as
/// one combined program. Layer coordinates are local to the batch.
struct Batch {
  int index = 0;
  std::vector<Placement> placements;
  int makespan = 0;                // max layer_end over placements
  long long two_qubit_total = 0;  // sum of contained circuits' 2Q counts

  bool operator==(const Batch&) const = default;
};

/// The full output of a packer: ordered batches plus schedule-level metrics.
///
/// `cutoff_count` follows the reporting convention of the packers: batch
/// boundaries (batches - 1) for the batched packers, one cutoff per circuit
/// for the serial packer.
struct Schedule {
  std::vector<Batch> batches;
  long long total_makespan = 0;  // sum of batch makespans
  int cutoff_count = 0;
  double avg_utilization = 0.0;  // sum of areas / (qubits * total makespan)
  std::string algorithm_tag;

  bool operator==(const Schedule&) const = default;
};

/// Phase-1 output: per-worker circuit-id lists and area load totals.
struct WorkerAssignment {
  std::vector<std::vector<int>> circuit_ids;  // per worker, in arrival order
  std::vector<long long> loads;               // per worker, sum of areas

  int worker_count() const { return static_cast<int>(circuit_ids.size()); }
};

}  // namespace circpack
