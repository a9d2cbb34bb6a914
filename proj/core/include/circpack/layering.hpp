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

#include <span>
#include <vector>

namespace circpack {

/// Result of ASAP layering over a gate list.
struct LayerAssignment {
  int depth = 0;                // 1 + max assigned layer, 0 for no layers
  std::vector<int> layer_of;    // per gate; barriers carry the layer they
                                // synchronize their operands to
};

/// Greedy as-soon-as-possible layering.
///
/// Each gate lands at the maximum next-free layer over its operand qubits;
/// the first gate on a qubit lands at layer 0. Measure and reset occupy one
/// layer like any other gate. Barriers occupy no layer themselves but raise
/// all their operands' frontiers to the highest frontier among them.
///
/// Throws MalformedCircuitError when an operand index is outside [0, width).
LayerAssignment asap_layers(std::span<const Gate> gates, int width);

/// Number of two-qubit gates in the list.
long long two_qubit_count(std::span<const Gate> gates);

}  // namespace circpack
