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

#include <cctype>
#include <map>
#include <set>
#include <utility>

namespace circpack::qasm {

namespace {

const std::set<std::string> kOneQubitGates = {
    "u1", "u2", "u3", "rx", "ry", "rz", "h",  "x",
    "y",  "z",  "s",  "sdg", "t", "tdg", "id"};

const std::set<std::string> kTwoQubitGates = {"cx", "cz", "rzz", "swap"};

struct Register {
  int offset = 0;  // flattened base index across declarations
  int size = 0;
};

// One quantum or classical argument: a register name with an optional index.
struct Argument {
  std::string reg;
  std::optional<int> index;
  int line = 0;
  int column = 0;
};

/// Character-level scanner over a QASM source with line/column tracking.
class Scanner {
 public:
  explicit Scanner(std::string_view text) : text_(text) {}

  void skip_trivia() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '/') {
        while (pos_ < text_.size() && text_[pos_] != '\n') {
          advance();
        }
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  bool at_end() {
    skip_trivia();
    return pos_ >= text_.size();
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  char advance() {
    const char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    return c;
  }

  bool try_consume(char expected) {
    skip_trivia();
    if (peek() == expected) {
      advance();
      return true;
    }
    return false;
  }

  void expect(char expected, const std::string& context) {
    skip_trivia();
    if (peek() != expected) {
      fail("expected '" + std::string(1, expected) + "' " + context);
    }
    advance();
  }

  bool try_consume_arrow() {
    skip_trivia();
    if (peek() == '-' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
      advance();
      advance();
      return true;
    }
    return false;
  }

  std::string read_identifier() {
    skip_trivia();
    mark();
    if (!std::isalpha(static_cast<unsigned char>(peek())) && peek() != '_') {
      fail("expected an identifier");
    }
    std::string out;
    while (pos_ < text_.size()) {
      const char c = peek();
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
        out.push_back(advance());
      } else {
        break;
      }
    }
    return out;
  }

  int read_unsigned() {
    skip_trivia();
    mark();
    if (!std::isdigit(static_cast<unsigned char>(peek()))) {
      fail("expected an unsigned integer");
    }
    long long value = 0;
    while (pos_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(peek()))) {
      value = value * 10 + (advance() - '0');
      if (value > 1'000'000'000) {
        fail("integer literal too large");
      }
    }
    return static_cast<int>(value);
  }

  std::string read_string_literal() {
    skip_trivia();
    mark();
    expect('"', "to open a string literal");
    std::string out;
    while (pos_ < text_.size() && peek() != '"') {
      out.push_back(advance());
    }
    expect('"', "to close the string literal");
    return out;
  }

  /// Raw text between balanced parentheses; the opening '(' has already
  /// been consumed.
  std::string read_raw_params() {
    std::string out;
    int nesting = 1;
    while (pos_ < text_.size()) {
      const char c = peek();
      if (c == '(') {
        ++nesting;
      } else if (c == ')') {
        if (--nesting == 0) {
          advance();
          // trim surrounding whitespace
          const auto first = out.find_first_not_of(" \t\r\n");
          const auto last = out.find_last_not_of(" \t\r\n");
          return first == std::string::npos
                     ? std::string()
                     : out.substr(first, last - first + 1);
        }
      }
      out.push_back(advance());
    }
    fail("unterminated parameter list");
  }

  // Remember the position of the token being read, for error reporting.
  void mark() {
    skip_trivia();
    marked_line_ = line_;
    marked_column_ = column_;
  }

  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(message, marked_line_, marked_column_);
  }

  int line() {
    skip_trivia();
    return line_;
  }

 private:
  std::string_view text_;
  size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
  int marked_line_ = 1;
  int marked_column_ = 1;
};

class ProgramParser {
 public:
  explicit ProgramParser(std::string_view text) : scanner_(text) {}

  Circuit parse(int id, std::string name) {
    parse_header();
    while (!scanner_.at_end()) {
      parse_statement();
    }
    if (qreg_name_.empty()) {
      throw UnsupportedStructureError("program declares no qreg");
    }
    return make_circuit(id, std::move(name), qreg_.size, std::move(gates_));
  }

 private:
  void parse_header() {
    scanner_.mark();
    const std::string keyword = scanner_.read_identifier();
    if (keyword != "OPENQASM") {
      scanner_.fail("expected the OPENQASM header");
    }
    scanner_.mark();
    const int major = scanner_.read_unsigned();
    scanner_.expect('.', "in the version number");
    const int minor = scanner_.read_unsigned();
    if (major != 2 || minor != 0) {
      throw UnsupportedStructureError(
          "only OPENQASM 2.0 is supported, got " + std::to_string(major) +
          "." + std::to_string(minor));
    }
    scanner_.expect(';', "after the version");
  }

  void parse_statement() {
    scanner_.mark();
    const int line = scanner_.line();
    const std::string keyword = scanner_.read_identifier();

    if (keyword == "include") {
      scanner_.read_string_literal();
      scanner_.expect(';', "after include");
    } else if (keyword == "qreg") {
      parse_qreg();
    } else if (keyword == "creg") {
      parse_creg();
    } else if (keyword == "gate" || keyword == "opaque") {
      throw UnsupportedStructureError(
          "custom gate definitions are not supported (line " +
          std::to_string(line) + ")");
    } else if (keyword == "if") {
      throw UnsupportedStructureError(
          "classical control flow is not supported (line " +
          std::to_string(line) + ")");
    } else if (keyword == "measure") {
      parse_measure();
    } else if (keyword == "reset") {
      parse_reset();
    } else if (keyword == "barrier") {
      parse_barrier();
    } else {
      parse_gate(keyword, line);
    }
  }

  void parse_qreg() {
    scanner_.mark();
    const std::string name = scanner_.read_identifier();
    scanner_.expect('[', "in the qreg declaration");
    const int size = scanner_.read_unsigned();
    scanner_.expect(']', "in the qreg declaration");
    scanner_.expect(';', "after the qreg declaration");
    if (!qreg_name_.empty()) {
      throw UnsupportedStructureError(
          "multiple qregs are not supported ('" + qreg_name_ + "' and '" +
          name + "'); flatten to a single register");
    }
    if (size < 1) {
      scanner_.fail("qreg size must be >= 1");
    }
    qreg_name_ = name;
    qreg_ = {0, size};
  }

  void parse_creg() {
    const std::string name = scanner_.read_identifier();
    scanner_.expect('[', "in the creg declaration");
    const int size = scanner_.read_unsigned();
    scanner_.expect(']', "in the creg declaration");
    scanner_.expect(';', "after the creg declaration");
    cregs_[name] = {classical_bits_, size};
    classical_bits_ += size;
  }

  Argument parse_argument() {
    scanner_.mark();
    Argument arg;
    arg.line = scanner_.line();
    arg.reg = scanner_.read_identifier();
    if (scanner_.try_consume('[')) {
      arg.index = scanner_.read_unsigned();
      scanner_.expect(']', "after the register index");
    }
    return arg;
  }

  std::vector<Argument> parse_argument_list() {
    std::vector<Argument> args;
    args.push_back(parse_argument());
    while (scanner_.try_consume(',')) {
      args.push_back(parse_argument());
    }
    return args;
  }

  /// Resolves a quantum argument to flat qubit indices (all indices of the
  /// register for the bare form).
  std::vector<int> resolve_qubits(const Argument& arg) {
    if (arg.reg != qreg_name_) {
      scanner_.fail("unknown quantum register '" + arg.reg + "'");
    }
    if (arg.index) {
      if (*arg.index >= qreg_.size) {
        scanner_.fail("index " + std::to_string(*arg.index) +
                      " is outside qreg '" + arg.reg + "[" +
                      std::to_string(qreg_.size) + "]'");
      }
      return {*arg.index};
    }
    std::vector<int> all(static_cast<size_t>(qreg_.size));
    for (int i = 0; i < qreg_.size; ++i) {
      all[i] = i;
    }
    return all;
  }

  std::vector<int> resolve_classical(const Argument& arg) {
    const auto it = cregs_.find(arg.reg);
    if (it == cregs_.end()) {
      scanner_.fail("unknown classical register '" + arg.reg + "'");
    }
    const Register& reg = it->second;
    if (arg.index) {
      if (*arg.index >= reg.size) {
        scanner_.fail("index " + std::to_string(*arg.index) +
                      " is outside creg '" + arg.reg + "[" +
                      std::to_string(reg.size) + "]'");
      }
      return {reg.offset + *arg.index};
    }
    std::vector<int> all(static_cast<size_t>(reg.size));
    for (int i = 0; i < reg.size; ++i) {
      all[i] = reg.offset + i;
    }
    return all;
  }

  void parse_measure() {
    const Argument qarg = parse_argument();
    scanner_.mark();
    if (!scanner_.try_consume_arrow()) {
      scanner_.fail("expected '->' in the measure statement");
    }
    const Argument carg = parse_argument();
    scanner_.expect(';', "after the measure statement");

    const std::vector<int> qubits = resolve_qubits(qarg);
    const std::vector<int> bits = resolve_classical(carg);
    if (qubits.size() != bits.size()) {
      scanner_.fail("measure operand sizes differ (" +
                    std::to_string(qubits.size()) + " qubits vs " +
                    std::to_string(bits.size()) + " bits)");
    }
    for (size_t i = 0; i < qubits.size(); ++i) {
      Gate gate;
      gate.kind = GateKind::Measure;
      gate.name = "measure";
      gate.operands = {qubits[i]};
      gate.classical_target = bits[i];
      gates_.push_back(std::move(gate));
    }
  }

  void parse_reset() {
    const Argument qarg = parse_argument();
    scanner_.expect(';', "after the reset statement");
    for (int qubit : resolve_qubits(qarg)) {
      Gate gate;
      gate.kind = GateKind::Reset;
      gate.name = "reset";
      gate.operands = {qubit};
      gates_.push_back(std::move(gate));
    }
  }

  void parse_barrier() {
    const std::vector<Argument> args = parse_argument_list();
    scanner_.expect(';', "after the barrier statement");
    Gate gate;
    gate.kind = GateKind::Barrier;
    gate.name = "barrier";
    for (const Argument& arg : args) {
      for (int qubit : resolve_qubits(arg)) {
        gate.operands.push_back(qubit);
      }
    }
    gates_.push_back(std::move(gate));
  }

  void parse_gate(const std::string& mnemonic, int line) {
    std::string params;
    if (scanner_.try_consume('(')) {
      params = scanner_.read_raw_params();
    }
    const std::vector<Argument> args = parse_argument_list();
    scanner_.expect(';', "after the gate statement");

    if (kOneQubitGates.contains(mnemonic)) {
      if (args.size() != 1) {
        throw UnsupportedGateError(
            "gate '" + mnemonic + "' takes one operand, got " +
            std::to_string(args.size()) + " (line " + std::to_string(line) +
            ")");
      }
      for (int qubit : resolve_qubits(args[0])) {
        Gate gate;
        gate.kind = GateKind::OneQubit;
        gate.name = mnemonic;
        gate.params = params;
        gate.operands = {qubit};
        gates_.push_back(std::move(gate));
      }
      return;
    }

    if (kTwoQubitGates.contains(mnemonic)) {
      if (args.size() != 2) {
        throw UnsupportedGateError(
            "gate '" + mnemonic + "' takes two operands, got " +
            std::to_string(args.size()) + " (line " + std::to_string(line) +
            ")");
      }
      if (!args[0].index || !args[1].index) {
        throw UnsupportedStructureError(
            "register-wide two-qubit gates are not supported (line " +
            std::to_string(line) + ")");
      }
      const int a = resolve_qubits(args[0]).front();
      const int b = resolve_qubits(args[1]).front();
      if (a == b) {
        throw MalformedCircuitError("gate '" + mnemonic +
                                    "' has duplicate operands (line " +
                                    std::to_string(line) + ")");
      }
      Gate gate;
      gate.kind = GateKind::TwoQubit;
      gate.name = mnemonic;
      gate.params = params;
      gate.operands = {a, b};
      gates_.push_back(std::move(gate));
      return;
    }

    if (args.size() >= 3) {
      throw UnsupportedGateError(
          "gate '" + mnemonic + "' has " + std::to_string(args.size()) +
          " qubit operands (line " + std::to_string(line) +
          "); pre-decompose the program to 1- and 2-qubit gates");
    }
    throw UnsupportedGateError("unknown gate '" + mnemonic + "' (line " +
                               std::to_string(line) + ")");
  }

  Scanner scanner_;
  std::string qreg_name_;
  Register qreg_;
  std::map<std::string, Register> cregs_;
  int classical_bits_ = 0;
  std::vector<Gate> gates_;
};

}  // namespace

Circuit parse_program(std::string_view text, int id, std::string name) {
  return ProgramParser(text).parse(id, std::move(name));
}

}  // namespace circpack::qasm
