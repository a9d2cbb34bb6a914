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

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace circpack::qasm {

/// Shot counts keyed by result bitstring. Ordered so that emitted files and
/// tables are deterministic.
using Counts = std::map<std::string, long long>;

/// One classical register of a combined program, in declaration order.
struct RegisterField {
  int circuit_id = 0;
  std::string creg_name;  // "c<circuit_id>"
  int bits = 0;           // measured-bit count of the circuit

  bool operator==(const RegisterField&) const = default;
};

/// A multi-programmed QASM source for one batch, plus the classical register
/// layout needed to unbundle its results.
///
/// Result bitstring convention: the first register in `register_layout` is
/// the leftmost field of a result key, and bits within a register are
/// written most-significant-first by descending classical index.
struct CombinedProgram {
  std::string text;
  std::vector<RegisterField> register_layout;
  int batch_index = 0;
};

/// Parses an OpenQASM 2.0 program (restricted subset) into a Circuit.
///
/// Supported statements: the header, an optional include, exactly one qreg,
/// any number of cregs, the known one-qubit gates (u1, u2, u3, rx, ry, rz,
/// h, x, y, z, s, sdg, t, tdg, id), the known two-qubit gates (cx, cz, rzz,
/// swap), measure, reset, and barrier. Gate parameter expressions are kept
/// as opaque text. Register-wide forms of one-qubit gates, measure, reset,
/// and barrier broadcast over the register.
///
/// Errors: UnsupportedGateError for unknown mnemonics and gates with three
/// or more quantum operands (naming the gate and line, and pointing at
/// pre-decomposition); UnsupportedStructureError for multiple qregs or gate
/// definition blocks; ParseError (with line/column) for syntax errors.
Circuit parse_program(std::string_view text, int id = 0,
                      std::string name = "");

/// Combines a batch's circuits into one QASM program on the device's qubits.
///
/// The output declares a single qreg of topology.total_qubits qubits and one
/// creg per placed circuit (named c<circuit_id>, sized to that circuit's
/// measured-bit count, declared in ascending circuit id order). Gates are
/// emitted in global layer order with ties broken by circuit id and then
/// source order; logical qubit k of a circuit maps to physical qubit
/// placement start + k. A reset follows every measure on the same physical
/// qubit. Barriers are preserved per circuit.
///
/// Throws ConsistencyError when a placement references an unknown circuit id
/// or runs past the device qubits.
CombinedProgram emit_combined(const Batch& batch,
                              const std::vector<Circuit>& circuits,
                              const DeviceTopology& topology);

/// Splits full-program result counts into per-circuit marginal counts by
/// slicing each circuit's bit field out of every key. Shot totals are
/// conserved per circuit.
///
/// Throws MalformedResultsError when a key's length differs from the layout
/// total.
std::map<int, Counts> unbundle(const Counts& counts,
                               const std::vector<RegisterField>& layout);

/// Probability of successful trial: 100 * counts[ideal] / total shots
/// (0 when `ideal` never occurred). Throws ConfigError on empty counts.
double pst(const Counts& counts, const std::string& ideal);

}  // namespace circpack::qasm
