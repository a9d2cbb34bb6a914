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

#include "circpack/model.hpp"

#include "circpack/errors.hpp"
#include "circpack/layering.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

namespace circpack {

namespace {

void validate_gates(const std::vector<Gate>& gates, int width,
                    const std::string& name) {
  for (const Gate& gate : gates) {
    for (int operand : gate.operands) {
      if (operand < 0 || operand >= width) {
        throw MalformedCircuitError(
            "circuit '" + name + "': operand q[" + std::to_string(operand) +
            "] of gate '" + gate.name + "' is outside the " +
            std::to_string(width) + "-qubit register");
      }
    }
    switch (gate.kind) {
      case GateKind::OneQubit:
      case GateKind::Measure:
      case GateKind::Reset:
        if (gate.operands.size() != 1) {
          throw MalformedCircuitError("circuit '" + name + "': gate '" +
                                      gate.name +
                                      "' must have exactly one operand");
        }
        break;
      case GateKind::TwoQubit:
        if (gate.operands.size() != 2) {
          throw MalformedCircuitError("circuit '" + name + "': gate '" +
                                      gate.name +
                                      "' must have exactly two operands");
        }
        if (gate.operands[0] == gate.operands[1]) {
          throw MalformedCircuitError("circuit '" + name + "': gate '" +
                                      gate.name +
                                      "' has duplicate operands");
        }
        break;
      case GateKind::Barrier:
        if (gate.operands.empty()) {
          throw MalformedCircuitError("circuit '" + name +
                                      "': barrier needs operands");
        }
        break;
    }
  }
}

}  // namespace

Circuit make_circuit(int id, std::string name, int width,
                     std::vector<Gate> gates,
                     std::optional<std::string> ideal_outcome) {
  if (width < 1) {
    throw MalformedCircuitError("circuit '" + name + "': width must be >= 1");
  }
  validate_gates(gates, width, name);
  const LayerAssignment layers = asap_layers(gates, width);
  if (!gates.empty() && layers.depth == 0) {
    throw MalformedCircuitError("circuit '" + name +
                                "': gate list yields no layers");
  }

  Circuit circuit;
  circuit.id = id;
  circuit.name = std::move(name);
  circuit.width = width;
  circuit.depth = layers.depth;
  circuit.two_qubit_count = two_qubit_count(gates);
  circuit.area = static_cast<long long>(width) * circuit.depth;
  circuit.ideal_outcome = std::move(ideal_outcome);
  circuit.gates = std::move(gates);
  return circuit;
}

Circuit make_circuit_with_metrics(int id, std::string name, int width,
                                  std::vector<Gate> gates, int depth,
                                  long long two_qubit_count,
                                  std::optional<std::string> ideal_outcome) {
  if (width < 1 || depth < 1) {
    throw MalformedCircuitError("circuit '" + name +
                                "': width and depth must be >= 1");
  }
  validate_gates(gates, width, name);

  Circuit circuit;
  circuit.id = id;
  circuit.name = std::move(name);
  circuit.width = width;
  circuit.depth = depth;
  circuit.two_qubit_count = two_qubit_count;
  circuit.area = static_cast<long long>(width) * depth;
  circuit.ideal_outcome = std::move(ideal_outcome);
  circuit.gates = std::move(gates);
  return circuit;
}

int DeviceTopology::max_trap_capacity() const {
  return traps.empty() ? 0 : *std::max_element(traps.begin(), traps.end());
}

int DeviceTopology::trap_offset(int trap) const {
  return std::accumulate(traps.begin(), traps.begin() + trap, 0);
}

int DeviceTopology::trap_of_physical(int physical) const {
  int offset = 0;
  for (int t = 0; t < trap_count(); ++t) {
    offset += traps[t];
    if (physical < offset) {
      return t;
    }
  }
  throw ConsistencyError("physical qubit " + std::to_string(physical) +
                         " is outside the device (" +
                         std::to_string(total_qubits) + " qubits)");
}

DeviceTopology make_topology(std::vector<int> trap_capacities, int alpha) {
  if (trap_capacities.empty()) {
    throw ConfigError("topology needs at least one trap");
  }
  for (int capacity : trap_capacities) {
    if (capacity < 1) {
      throw ConfigError("every trap capacity must be >= 1");
    }
  }
  if (alpha < 1) {
    throw ConfigError("alpha must be >= 1");
  }

  DeviceTopology topology;
  topology.total_qubits =
      std::accumulate(trap_capacities.begin(), trap_capacities.end(), 0);
  topology.traps = std::move(trap_capacities);
  topology.alpha = alpha;
  return topology;
}

}  // namespace circpack
