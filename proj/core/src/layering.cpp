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

#include "circpack/layering.hpp"

#include "circpack/errors.hpp"

#include <algorithm>

namespace circpack {

LayerAssignment asap_layers(std::span<const Gate> gates, int width) {
  // frontier[q] = next free layer on qubit q
  std::vector<int> frontier(static_cast<size_t>(std::max(width, 0)), 0);

  LayerAssignment result;
  result.layer_of.reserve(gates.size());
  int max_layer = -1;  // over non-barrier gates

  for (const Gate& gate : gates) {
    for (int operand : gate.operands) {
      if (operand < 0 || operand >= width) {
        throw MalformedCircuitError("gate '" + gate.name + "' operand q[" +
                                    std::to_string(operand) +
                                    "] is outside the " +
                                    std::to_string(width) +
                                    "-qubit register");
      }
    }
    int layer = 0;
    for (int operand : gate.operands) {
      layer = std::max(layer, frontier[operand]);
    }
    if (gate.kind == GateKind::Barrier) {
      // Synchronization only: align operand frontiers, consume no layer.
      for (int operand : gate.operands) {
        frontier[operand] = layer;
      }
    } else {
      for (int operand : gate.operands) {
        frontier[operand] = layer + 1;
      }
      max_layer = std::max(max_layer, layer);
    }
    result.layer_of.push_back(layer);
  }

  result.depth = max_layer + 1;
  return result;
}

long long two_qubit_count(std::span<const Gate> gates) {
  return std::count_if(gates.begin(), gates.end(), [](const Gate& gate) {
    return gate.kind == GateKind::TwoQubit;
  });
}

}  // namespace circpack
