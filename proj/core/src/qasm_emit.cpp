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

#include "circpack/qasm.hpp"

#include "circpack/errors.hpp"
#include "circpack/layering.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>
#include <unordered_map>

namespace circpack::qasm {

namespace {

std::string gate_call(const Gate& gate) {
  std::string out = gate.name;
  if (!gate.params.empty()) {
    out += "(" + gate.params + ")";
  }
  return out;
}

/// Compact classical slot for each measure target: distinct targets sorted
/// ascending. Measures without an explicit target use their operand index,
/// matching the common `measure q[k] -> c[k]` convention.
int classical_key(const Gate& gate) {
  return gate.classical_target ? *gate.classical_target : gate.operands[0];
}

}  // namespace

CombinedProgram emit_combined(const Batch& batch,
                              const std::vector<Circuit>& circuits,
                              const DeviceTopology& topology) {
  std::unordered_map<int, const Circuit*> by_id;
  for (const Circuit& circuit : circuits) {
    by_id.emplace(circuit.id, &circuit);
  }

  // Placements in ascending circuit id order drive the creg declarations.
  std::vector<const Placement*> ordered;
  ordered.reserve(batch.placements.size());
  for (const Placement& placement : batch.placements) {
    ordered.push_back(&placement);
  }
  std::sort(ordered.begin(), ordered.end(),
            [](const Placement* a, const Placement* b) {
              return a->circuit_id < b->circuit_id;
            });

  struct Statement {
    int layer;
    int circuit_id;
    int source_index;
    std::string text;
  };
  std::vector<Statement> statements;
  std::vector<RegisterField> layout;
  std::string declarations;

  for (const Placement* placement : ordered) {
    const auto it = by_id.find(placement->circuit_id);
    if (it == by_id.end()) {
      throw ConsistencyError("placement references unknown circuit id " +
                             std::to_string(placement->circuit_id));
    }
    const Circuit& circuit = *it->second;
    const int physical_start = placement->physical_qubit_start(topology);
    if (physical_start < 0 ||
        physical_start + circuit.width > topology.total_qubits) {
      throw ConsistencyError(
          "circuit " + std::to_string(circuit.id) + " at physical qubits [" +
          std::to_string(physical_start) + ", " +
          std::to_string(physical_start + circuit.width) +
          ") runs past the device (" + std::to_string(topology.total_qubits) +
          " qubits)");
    }

    const LayerAssignment layers = asap_layers(circuit.gates, circuit.width);

    std::set<int> targets;
    for (const Gate& gate : circuit.gates) {
      if (gate.kind == GateKind::Measure) {
        targets.insert(classical_key(gate));
      }
    }
    std::map<int, int> slot;
    for (int target : targets) {
      slot.emplace(target, static_cast<int>(slot.size()));
    }

    const std::string creg = "c" + std::to_string(circuit.id);
    if (!targets.empty()) {
      declarations += "creg " + creg + "[" +
                      std::to_string(targets.size()) + "];\n";
      layout.push_back({circuit.id, creg, static_cast<int>(targets.size())});
    }

    for (size_t i = 0; i < circuit.gates.size(); ++i) {
      const Gate& gate = circuit.gates[i];
      const int layer = placement->layer_start + layers.layer_of[i];
      std::string text;
      switch (gate.kind) {
        case GateKind::OneQubit:
          text = gate_call(gate) + " q[" +
                 std::to_string(physical_start + gate.operands[0]) + "];";
          break;
        case GateKind::TwoQubit:
          text = gate_call(gate) + " q[" +
                 std::to_string(physical_start + gate.operands[0]) + "],q[" +
                 std::to_string(physical_start + gate.operands[1]) + "];";
          break;
        case GateKind::Reset:
          text = "reset q[" +
                 std::to_string(physical_start + gate.operands[0]) + "];";
          break;
        case GateKind::Measure: {
          const std::string qubit =
              "q[" + std::to_string(physical_start + gate.operands[0]) + "]";
          text = "measure ";
          text += qubit;
          text += " -> " + creg + "[" +
                  std::to_string(slot.at(classical_key(gate))) + "];\n";
          text += "reset " + qubit + ";";
          break;
        }
        case GateKind::Barrier: {
          text = "barrier ";
          for (size_t k = 0; k < gate.operands.size(); ++k) {
            if (k) {
              text += ",";
            }
            text += "q[";
            text += std::to_string(physical_start + gate.operands[k]);
            text += "]";
          }
          text += ";";
          break;
        }
      }
      statements.push_back(
          {layer, circuit.id, static_cast<int>(i), std::move(text)});
    }
  }

  std::sort(statements.begin(), statements.end(),
            [](const Statement& a, const Statement& b) {
              return std::tie(a.layer, a.circuit_id, a.source_index) <
                     std::tie(b.layer, b.circuit_id, b.source_index);
            });

  CombinedProgram program;
  program.batch_index = batch.index;
  program.register_layout = std::move(layout);
  program.text = "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[" +
                 std::to_string(topology.total_qubits) + "];\n" +
                 declarations;
  for (const Statement& statement : statements) {
    program.text += statement.text;
    program.text += "\n";
  }
  return program;
}

std::map<int, Counts> unbundle(const Counts& counts,
                               const std::vector<RegisterField>& layout) {
  size_t total_bits = 0;
  for (const RegisterField& field : layout) {
    total_bits += static_cast<size_t>(field.bits);
  }

  std::map<int, Counts> per_circuit;
  for (const RegisterField& field : layout) {
    per_circuit[field.circuit_id];  // present even if every count is zero
  }

  for (const auto& [key, shots] : counts) {
    if (key.size() != total_bits) {
      throw MalformedResultsError(
          "result key '" + key + "' has " + std::to_string(key.size()) +
          " bits, layout expects " + std::to_string(total_bits));
    }
    size_t offset = 0;
    for (const RegisterField& field : layout) {
      per_circuit[field.circuit_id]
                 [key.substr(offset, static_cast<size_t>(field.bits))] +=
          shots;
      offset += static_cast<size_t>(field.bits);
    }
  }
  return per_circuit;
}

double pst(const Counts& counts, const std::string& ideal) {
  if (counts.empty()) {
    throw ConfigError("pst needs at least one counted bitstring");
  }
  long long total = 0;
  for (const auto& [key, shots] : counts) {
    total += shots;
  }
  const auto it = counts.find(ideal);
  const long long successes = it == counts.end() ? 0 : it->second;
  return 100.0 * static_cast<double>(successes) / static_cast<double>(total);
}

}  // namespace circpack::qasm
