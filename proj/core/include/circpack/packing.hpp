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

#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace circpack {

/// Per-trap packing frontier: for every qubit of every trap, the next free
/// layer index.
struct SkylineGrid {
  std::vector<std::vector<int>> traps;  // traps[t][q] = next free layer

  static SkylineGrid for_topology(const DeviceTopology& topology);

  /// Marks qubits [qubit_start, qubit_start + width) of `trap` busy through
  /// layer_end (exclusive).
  void place(int trap, int qubit_start, int width, int layer_end);

  /// Highest frontier over the whole grid (0 when empty).
  int max_layer() const;

  void reset();
};

/// Position returned by the skyline search: the earliest feasible start
/// layer and the leftmost window achieving it.
struct SkylineFit {
  int layer_start = 0;
  int qubit_start = 0;
};

/// Finds, among all contiguous windows of `width` qubits in `frontier`, the
/// window whose maximum entry is smallest; that maximum is the earliest
/// feasible start layer. Ties break toward the lowest qubit_start.
///
/// Returns nullopt when `width` exceeds the frontier length (the circuit
/// does not fit this trap; not an error).
std::optional<SkylineFit> skyline_minimax(std::span<const int> frontier,
                                          int width);

enum class Algorithm { CircPack, Fifo, Skyline, Serial };

std::string_view algorithm_name(Algorithm algorithm);
/// Parses "circpack" / "fifo" / "skyline" / "serial". Throws ConfigError on
/// anything else.
Algorithm algorithm_from_name(std::string_view name);

/// Trap-aware packer with the two-qubit-gate cutoff.
///
/// Circuits are sorted by width descending (ties by ascending id) and each
/// is placed at the trap/window pair with the smallest start layer (ties:
/// lowest trap index, then lowest qubit_start). A running two-qubit gate
/// count is kept; when it reaches topology.alpha after a placement, the
/// current batch is sealed and packing restarts on an empty grid. Every
/// placement is confined to a single trap.
///
/// Throws OversizedCircuitError when a circuit is wider than every trap.
Schedule pack_circpack(const std::vector<Circuit>& circuits,
                       const DeviceTopology& topology);

/// Baseline: one batch per circuit, in input order, each at layer 0 of the
/// first trap that fits (global qubit 0 when only a trap-spanning fit
/// exists). Total makespan is the sum of depths; reports one cutoff per
/// circuit.
Schedule pack_serial(const std::vector<Circuit>& circuits,
                     const DeviceTopology& topology);

/// Baseline: input order, skyline search over the global concatenated
/// frontier (windows may span trap boundaries), single batch, no cutoffs.
Schedule pack_fifo(const std::vector<Circuit>& circuits,
                   const DeviceTopology& topology);

/// Baseline: width-descending sort like pack_circpack, but trap-oblivious
/// global skyline placement and no cutoffs.
Schedule pack_generic_skyline(const std::vector<Circuit>& circuits,
                              const DeviceTopology& topology);

/// Dispatches to the packer selected by `algorithm`.
Schedule pack(Algorithm algorithm, const std::vector<Circuit>& circuits,
              const DeviceTopology& topology);

}  // namespace circpack
