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

#include "circpack/metrics.hpp"
#include "circpack/model.hpp"
#include "circpack/qasm.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace circpack {

// --- topology files ---------------------------------------------------
//
// Plain key-value text, one `key = value` pair per line, '#' comments:
//
//   traps = 10,10
//   alpha = 170
//   layout = linear

DeviceTopology parse_topology(std::string_view text);
DeviceTopology load_topology(const std::filesystem::path& path);
std::string topology_to_text(const DeviceTopology& topology);

// --- queues -----------------------------------------------------------

/// A loaded job: the circuit plus the file it came from.
struct QueueEntry {
  Circuit circuit;
  std::string source_file;  // as resolved at load time
};

/// Loads a queue from either a directory of .qasm files (lexicographic
/// order) or a JSON manifest:
///
///   {"circuits": [{"file": "grover_n2.qasm",
///                  "ideal": "00",                     // optional
///                  "width": 2, "depth": 16,           // optional metric
///                  "two_qubit_count": 2}, ...]}       // overrides
///
/// Manifest paths resolve relative to the manifest's directory. Circuit ids
/// are assigned by position.
std::vector<QueueEntry> load_queue(const std::filesystem::path& dir_or_manifest);

/// Uniform sampling with replacement over a loaded queue, re-assigning ids
/// 0..n-1 by draw order.
///
/// The generator is fixed so runs are reproducible across platforms: a
/// std::mt19937_64 seeded with `seed`, drawing index = next() % queue size
/// for each of the n picks.
std::vector<QueueEntry> sample_queue(const std::vector<QueueEntry>& queue,
                                     int n, std::uint64_t seed);

std::vector<Circuit> circuits_of(const std::vector<QueueEntry>& entries);

// --- schedule files ---------------------------------------------------

/// Everything a schedule file round-trips: the schedule, the topology it
/// was packed against, its report, and the id -> source mapping needed to
/// rebuild combined programs later.
struct ScheduleFile {
  Schedule schedule;
  DeviceTopology topology;
  ScheduleReport report;
  std::vector<QueueEntry> queue;  // circuits in id order; gates not stored
};

/// Serializes to the documented JSON schema (see docs/FILE_FORMATS.md).
/// Key order is fixed, so equal inputs produce byte-identical files.
std::string schedule_to_json(const ScheduleFile& file);
ScheduleFile schedule_from_json(std::string_view json_text);
void save_schedule(const ScheduleFile& file, const std::filesystem::path& path);
ScheduleFile load_schedule(const std::filesystem::path& path);

// --- result counts ----------------------------------------------------
//
// Plain text, one `<bitstring> <count>` pair per line.

qasm::Counts parse_counts(std::string_view text);
qasm::Counts load_counts(const std::filesystem::path& path);
std::string counts_to_text(const qasm::Counts& counts);

// --- register-layout sidecars ------------------------------------------

/// One classical register of a combined program plus the reporting
/// metadata carried along for unbundling.
struct SidecarRegister {
  qasm::RegisterField field;
  std::string circuit_name;
  std::optional<std::string> ideal_outcome;
};

/// Sidecar written next to each combined program so results can be
/// unbundled without the schedule: the register layout in declaration
/// order, plus names and ideal outcomes for reporting.
struct LayoutSidecar {
  int batch_index = 0;
  std::vector<SidecarRegister> registers;

  std::vector<qasm::RegisterField> fields() const;
};

std::string sidecar_to_json(const LayoutSidecar& sidecar);
LayoutSidecar sidecar_from_json(std::string_view json_text);

// --- small helpers ------------------------------------------------------

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path,
                     std::string_view content);

}  // namespace circpack
