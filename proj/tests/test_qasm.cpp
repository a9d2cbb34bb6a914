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
#include "circpack/io.hpp"
#include "circpack/packing.hpp"
#include "testutil.hpp"

#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>

namespace circpack {
namespace {

using qasm::Counts;

const char* kMinimal = R"(OPENQASM 2.0;
include "qelib1.inc";
qreg q[2];
creg c[2];
h q[0];
cx q[0],q[1];
measure q[0] -> c[0];
measure q[1] -> c[1];
)";

TEST_CASE("parse a minimal program") {
  const Circuit circuit = qasm::parse_program(kMinimal, 3, "bell");
  CHECK(circuit.width == 2);
  CHECK(circuit.two_qubit_count == 1);
  CHECK(circuit.gates.size() == 4);
  CHECK(circuit.depth == 3);  // h | cx | measures
  CHECK(circuit.gates[2].classical_target == 0);
}

TEST_CASE("parse keeps gate parameters as opaque text") {
  const Circuit circuit = qasm::parse_program(
      "OPENQASM 2.0;\nqreg q[1];\nrz(pi/4) q[0];\nu3(0.1, 0.2, 0.3) q[0];\n");
  CHECK(circuit.gates[0].name == "rz");
  CHECK(circuit.gates[0].params == "pi/4");
  CHECK(circuit.gates[1].params == "0.1, 0.2, 0.3");
}

TEST_CASE("register-wide statements broadcast") {
  const Circuit circuit = qasm::parse_program(
      "OPENQASM 2.0;\nqreg q[3];\ncreg c[3];\nh q;\nbarrier q;\n"
      "measure q -> c;\n");
  CHECK(circuit.gates.size() == 7);  // 3 h + barrier + 3 measures
  CHECK(circuit.gates[3].kind == GateKind::Barrier);
  CHECK(circuit.gates[3].operands == std::vector<int>{0, 1, 2});
  CHECK(circuit.gates[6].classical_target == 2);
}

TEST_CASE("parse errors") {
  SUBCASE("three-operand gates point at pre-decomposition") {
    try {
      qasm::parse_program(
          "OPENQASM 2.0;\nqreg q[3];\nccx q[0],q[1],q[2];\n");
      FAIL("expected UnsupportedGateError");
    } catch (const UnsupportedGateError& error) {
      const std::string what = error.what();
      CHECK(what.find("ccx") != std::string::npos);
      CHECK(what.find("line 3") != std::string::npos);
      CHECK(what.find("pre-decompose") != std::string::npos);
    }
  }
  SUBCASE("unknown mnemonic") {
    CHECK_THROWS_AS(
        qasm::parse_program("OPENQASM 2.0;\nqreg q[2];\nfoo q[0];\n"),
        UnsupportedGateError);
  }
  SUBCASE("multiple qregs") {
    CHECK_THROWS_AS(
        qasm::parse_program("OPENQASM 2.0;\nqreg a[2];\nqreg b[2];\n"),
        UnsupportedStructureError);
  }
  SUBCASE("gate definition blocks") {
    CHECK_THROWS_AS(
        qasm::parse_program(
            "OPENQASM 2.0;\nqreg q[2];\ngate mygate a { h a; }\n"),
        UnsupportedStructureError);
  }
  SUBCASE("syntax error carries line and column") {
    try {
      qasm::parse_program("OPENQASM 2.0;\nqreg q[2;\n");
      FAIL("expected ParseError");
    } catch (const ParseError& error) {
      CHECK(error.line == 2);
    }
  }
  SUBCASE("duplicate two-qubit operands") {
    CHECK_THROWS_AS(
        qasm::parse_program("OPENQASM 2.0;\nqreg q[2];\ncx q[1],q[1];\n"),
        MalformedCircuitError);
  }
  SUBCASE("operand index out of range") {
    CHECK_THROWS_AS(
        qasm::parse_program("OPENQASM 2.0;\nqreg q[2];\nh q[5];\n"),
        ParseError);
  }
}

TEST_CASE("fixture files parse with the manifest metadata") {
  const auto entries = load_queue(testutil::data_dir() / "queue_small.json");
  REQUIRE(entries.size() == 8);
  CHECK(entries[0].circuit.name == "grover_n2");
  CHECK(entries[0].circuit.width == 2);
  for (const auto& entry : entries) {
    // stored metadata must agree with what the gates derive
    const Circuit derived = qasm::parse_program(
        read_text_file(entry.source_file), entry.circuit.id,
        entry.circuit.name);
    CHECK(derived.width == entry.circuit.width);
    CHECK(derived.depth == entry.circuit.depth);
    CHECK(derived.two_qubit_count == entry.circuit.two_qubit_count);
  }
}

// --- emit_combined -----------------------------------------------------

TEST_CASE("emit_combined identity placement preserves the gate multiset") {
  const DeviceTopology topology = make_topology({2});
  const Circuit circuit = qasm::parse_program(kMinimal, 0, "bell");

  Batch batch;
  batch.index = 0;
  batch.placements.push_back({0, 0, 0, 0, circuit.width, circuit.depth});
  batch.makespan = circuit.depth;

  const auto program = qasm::emit_combined(batch, {circuit}, topology);
  REQUIRE(program.register_layout.size() == 1);
  CHECK(program.register_layout[0].creg_name == "c0");
  CHECK(program.register_layout[0].bits == 2);
  const auto violation =
      testutil::round_trip_violation(program, batch, {circuit}, topology);
  CHECK_MESSAGE(!violation, violation.value_or(""));
}

TEST_CASE("emit_combined interleaves resets after measures") {
  const DeviceTopology topology = make_topology({2});
  const char* tiny =
      "OPENQASM 2.0;\nqreg q[1];\ncreg c[1];\nx q[0];\nmeasure q[0] -> c[0];\n";
  const Circuit c0 = qasm::parse_program(tiny, 0, "a");
  const Circuit c1 = qasm::parse_program(tiny, 1, "b");

  Batch batch;
  batch.placements.push_back({0, 0, 0, 0, 1, 2});
  batch.placements.push_back({1, 0, 1, 0, 1, 2});
  batch.makespan = 2;

  const auto program = qasm::emit_combined(batch, {c0, c1}, topology);
  CHECK(program.text.find("x q[0];") != std::string::npos);
  CHECK(program.text.find("x q[1];") != std::string::npos);
  CHECK(program.text.find("measure q[0] -> c0[0];") != std::string::npos);
  CHECK(program.text.find("measure q[1] -> c1[0];") != std::string::npos);
  // each measure is chased by a reset of the same physical qubit
  const auto m0 = program.text.find("measure q[0]");
  CHECK(program.text.find("reset q[0];", m0) != std::string::npos);
  const auto m1 = program.text.find("measure q[1]");
  CHECK(program.text.find("reset q[1];", m1) != std::string::npos);
}

TEST_CASE("emit_combined round-trips every packed fixture batch") {
  const std::vector<Circuit> circuits = testutil::small_fixtures();
  const DeviceTopology topology = make_topology({10, 10});
  for (const Algorithm algorithm :
       {Algorithm::CircPack, Algorithm::Fifo, Algorithm::Skyline}) {
    const Schedule schedule = pack(algorithm, circuits, topology);
    for (const Batch& batch : schedule.batches) {
      const auto program = qasm::emit_combined(batch, circuits, topology);
      const auto violation =
          testutil::round_trip_violation(program, batch, circuits, topology);
      CHECK_MESSAGE(!violation, violation.value_or(""));
    }
  }
}

TEST_CASE("emit_combined round-trips cross-trap placements") {
  // the fourteen-fixture set includes circuits up to width 18, which the
  // trap-oblivious packers place across the trap boundary
  const std::vector<Circuit> circuits = testutil::all_fixtures();
  const DeviceTopology topology = make_topology({10, 10});
  for (const Algorithm algorithm : {Algorithm::Fifo, Algorithm::Skyline}) {
    const Schedule schedule = pack(algorithm, circuits, topology);
    for (const Batch& batch : schedule.batches) {
      const auto program = qasm::emit_combined(batch, circuits, topology);
      const auto violation =
          testutil::round_trip_violation(program, batch, circuits, topology);
      CHECK_MESSAGE(!violation, violation.value_or(""));
    }
  }
}

TEST_CASE("unbundle re-joins to the original keys") {
  // partition property: slicing and re-concatenating per-circuit fields
  // reconstructs every original key with its full count
  const std::vector<qasm::RegisterField> layout = {
      {0, "c0", 2}, {1, "c1", 3}, {2, "c2", 1}};
  const Counts counts = {{"010110", 11}, {"110001", 5}, {"000000", 84}};
  const auto split = qasm::unbundle(counts, layout);

  Counts rejoined;
  for (const auto& [key, shots] : counts) {
    std::string rebuilt;
    size_t offset = 0;
    for (const auto& field : layout) {
      const std::string slice =
          key.substr(offset, static_cast<size_t>(field.bits));
      REQUIRE(split.at(field.circuit_id).count(slice));
      rebuilt += slice;
      offset += static_cast<size_t>(field.bits);
    }
    rejoined[rebuilt] += shots;
  }
  CHECK(rejoined == counts);
}

TEST_CASE("emit_combined consistency errors") {
  const DeviceTopology topology = make_topology({2});
  Batch batch;
  batch.placements.push_back({42, 0, 0, 0, 1, 1});
  CHECK_THROWS_AS(qasm::emit_combined(batch, {}, topology), ConsistencyError);

  const Circuit circuit = qasm::parse_program(kMinimal, 0, "bell");
  Batch off_device;
  off_device.placements.push_back({0, 0, 1, 0, 2, 3});
  CHECK_THROWS_AS(qasm::emit_combined(off_device, {circuit}, topology),
                  ConsistencyError);
}

// --- unbundle / pst -----------------------------------------------------

TEST_CASE("unbundle slices bit fields in declaration order") {
  const std::vector<qasm::RegisterField> layout = {{0, "c0", 2}, {1, "c1", 1}};
  const auto split = qasm::unbundle({{"101", 7}}, layout);
  CHECK(split.at(0) == Counts{{"10", 7}});
  CHECK(split.at(1) == Counts{{"1", 7}});
}

TEST_CASE("unbundle of a single register is the identity") {
  const std::vector<qasm::RegisterField> layout = {{5, "c5", 3}};
  const Counts counts = {{"101", 9}, {"000", 3}};
  CHECK(qasm::unbundle(counts, layout).at(5) == counts);
}

TEST_CASE("unbundle conserves shot totals") {
  const std::vector<qasm::RegisterField> layout = {{0, "c0", 2}, {1, "c1", 2}};
  const Counts counts = {{"0000", 500}, {"0110", 300}, {"1111", 224}};
  const auto split = qasm::unbundle(counts, layout);
  for (const auto& [id, per_circuit] : split) {
    long long total = 0;
    for (const auto& [bits, shots] : per_circuit) total += shots;
    CHECK(total == 1024);
  }
}

TEST_CASE("unbundle rejects keys of the wrong length") {
  const std::vector<qasm::RegisterField> layout = {{0, "c0", 2}};
  CHECK_THROWS_AS(qasm::unbundle({{"101", 1}}, layout),
                  MalformedResultsError);
}

TEST_CASE("pst fixtures") {
  CHECK(qasm::pst({{"00", 1024}}, "00") == doctest::Approx(100.0));
  CHECK(qasm::pst({{"00", 900}, {"01", 124}}, "00") ==
        doctest::Approx(87.890625).epsilon(1e-12));
  CHECK(qasm::pst({{"11", 5}}, "00") == doctest::Approx(0.0));
  CHECK_THROWS_AS(qasm::pst({}, "00"), ConfigError);
}

TEST_CASE("pst is scale invariant") {
  const Counts counts = {{"00", 311}, {"10", 97}, {"11", 616}};
  Counts tripled;
  for (const auto& [bits, shots] : counts) tripled[bits] = shots * 3;
  CHECK(qasm::pst(counts, "11") ==
        doctest::Approx(qasm::pst(tripled, "11")).epsilon(1e-12));
}

TEST_CASE("pst stays within [0, 100] on random counts") {
  std::mt19937_64 rng(5150);
  for (int round = 0; round < 200; ++round) {
    Counts counts;
    const int keys = 1 + static_cast<int>(rng() % 8);
    for (int k = 0; k < keys; ++k) {
      std::string bits;
      for (int b = 0; b < 4; ++b) bits.push_back(rng() % 2 ? '1' : '0');
      counts[bits] += 1 + static_cast<long long>(rng() % 1000);
    }
    const double value = qasm::pst(counts, "0101");
    CHECK(value >= 0.0);
    CHECK(value <= 100.0);
  }
}

TEST_CASE("only version 2.0 programs are accepted") {
  CHECK_THROWS_AS(qasm::parse_program("OPENQASM 3.0;\nqreg q[1];\n"),
                  UnsupportedStructureError);
}

}  // namespace
}  // namespace circpack
