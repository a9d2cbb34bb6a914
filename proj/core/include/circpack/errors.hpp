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

#include <stdexcept>
#include <string>

namespace circpack {

/// Base class for all errors raised by the circpack library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Syntax error while reading a QASM program or one of the text file formats.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column)
      : Error(what + " (line " + std::to_string(line) + ", column " +
              std::to_string(column) + ")"),
        line(line),
        column(column) {}
  int line;
  int column;
};

/// A gate mnemonic outside the supported set (e.g. ccx, custom gates).
class UnsupportedGateError : public Error {
 public:
  using Error::Error;
};

/// Program structure outside the supported subset (multiple qregs, gate
/// definition blocks, ...).
class UnsupportedStructureError : public Error {
 public:
  using Error::Error;
};

/// A gate list that violates circuit invariants (operand out of range,
/// duplicate two-qubit operands, zero layers).
class MalformedCircuitError : public Error {
 public:
  using Error::Error;
};

/// A circuit that cannot fit the device under the selected packer.
class OversizedCircuitError : public Error {
 public:
  using Error::Error;
};

/// Schedule/circuit/topology cross-references that do not line up.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

/// Result-counts input whose keys do not match the register layout.
class MalformedResultsError : public Error {
 public:
  using Error::Error;
};

/// Invalid run configuration (zero workers, bad flag combinations, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace circpack
