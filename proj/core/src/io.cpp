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

#include "circpack/io.hpp"

#include "circpack/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <random>
#include <sstream>

namespace circpack {

namespace {

using json = nlohmann::ordered_json;

std::string trim(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = text.find_last_not_of(" \t\r\n");
  return std::string(text.substr(first, last - first + 1));
}

std::vector<int> parse_int_list(const std::string& text, int line_number) {
  std::vector<int> values;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    const std::string token = trim(item);
    if (token.empty() || !std::all_of(token.begin(), token.end(), [](char c) {
          return std::isdigit(static_cast<unsigned char>(c));
        })) {
      throw ParseError("expected a comma-separated integer list", line_number,
                       1);
    }
    values.push_back(std::stoi(token));
  }
  return values;
}

json topology_json(const DeviceTopology& topology) {
  json out;
  out["traps"] = topology.traps;
  out["alpha"] = topology.alpha;
  out["layout"] = "linear";
  return out;
}

DeviceTopology topology_from_json(const json& value) {
  return make_topology(value.at("traps").get<std::vector<int>>(),
                       value.at("alpha").get<int>());
}

}  // namespace

DeviceTopology parse_topology(std::string_view text) {
  std::optional<std::vector<int>> traps;
  int alpha = 170;

  std::stringstream stream{std::string(text)};
  std::string raw_line;
  int line_number = 0;
  while (std::getline(stream, raw_line)) {
    ++line_number;
    const auto comment = raw_line.find('#');
    if (comment != std::string::npos) {
      raw_line.resize(comment);
    }
    const std::string line = trim(raw_line);
    if (line.empty()) {
      continue;
    }
    const auto equals = line.find('=');
    if (equals == std::string::npos) {
      throw ParseError("expected 'key = value'", line_number, 1);
    }
    const std::string key = trim(line.substr(0, equals));
    const std::string value = trim(line.substr(equals + 1));
    if (key == "traps") {
      traps = parse_int_list(value, line_number);
    } else if (key == "alpha") {
      try {
        alpha = std::stoi(value);
      } catch (const std::exception&) {
        throw ParseError("alpha must be an integer", line_number, 1);
      }
    } else if (key == "layout") {
      if (value != "linear") {
        throw ConfigError("unsupported layout '" + value +
                          "' (only linear)");
      }
    } else {
      throw ParseError("unknown topology key '" + key + "'", line_number, 1);
    }
  }
  if (!traps) {
    throw ConfigError("topology file does not declare traps");
  }
  return make_topology(std::move(*traps), alpha);
}

DeviceTopology load_topology(const std::filesystem::path& path) {
  return parse_topology(read_text_file(path));
}

std::string topology_to_text(const DeviceTopology& topology) {
  std::string traps;
  for (size_t t = 0; t < topology.traps.size(); ++t) {
    traps += (t ? "," : "") + std::to_string(topology.traps[t]);
  }
  return "traps = " + traps + "\nalpha = " + std::to_string(topology.alpha) +
         "\nlayout = linear\n";
}

namespace {

QueueEntry load_queue_file(const std::filesystem::path& file, int id,
                           std::string name,
                           std::optional<std::string> ideal,
                           std::optional<int> width,
                           std::optional<int> depth,
                           std::optional<long long> two_qubit) {
  Circuit parsed;
  try {
    parsed = qasm::parse_program(read_text_file(file), id, name);
  } catch (const Error& error) {
    throw Error(file.string() + ": " + error.what());
  }

  Circuit circuit;
  if (width || depth || two_qubit) {
    // Manifest metadata pins the scheduling metrics for this fixture.
    circuit = make_circuit_with_metrics(
        id, std::move(name), width.value_or(parsed.width),
        std::move(parsed.gates), depth.value_or(parsed.depth),
        two_qubit.value_or(parsed.two_qubit_count), std::move(ideal));
  } else {
    circuit = std::move(parsed);
    circuit.ideal_outcome = std::move(ideal);
  }
  return {std::move(circuit), file.string()};
}

std::vector<QueueEntry> load_queue_manifest(
    const std::filesystem::path& manifest_path) {
  json manifest;
  try {
    manifest = json::parse(read_text_file(manifest_path));
  } catch (const json::exception& error) {
    throw ParseError(manifest_path.string() + ": " + error.what(), 1, 1);
  }
  if (!manifest.contains("circuits") || !manifest["circuits"].is_array()) {
    throw ConfigError(manifest_path.string() +
                      ": manifest needs a 'circuits' array");
  }

  const std::filesystem::path base = manifest_path.parent_path();
  std::vector<QueueEntry> entries;
  int id = 0;
  for (const json& item : manifest["circuits"]) {
    const std::filesystem::path file =
        base / item.at("file").get<std::string>();
    std::string name = item.contains("name")
                           ? item["name"].get<std::string>()
                           : file.stem().string();
    std::optional<std::string> ideal;
    if (item.contains("ideal")) {
      ideal = item["ideal"].get<std::string>();
    }
    std::optional<int> width, depth;
    std::optional<long long> two_qubit;
    if (item.contains("width")) width = item["width"].get<int>();
    if (item.contains("depth")) depth = item["depth"].get<int>();
    if (item.contains("two_qubit_count")) {
      two_qubit = item["two_qubit_count"].get<long long>();
    }
    entries.push_back(load_queue_file(file, id++, std::move(name),
                                      std::move(ideal), width, depth,
                                      two_qubit));
  }
  return entries;
}

}  // namespace

std::vector<QueueEntry> load_queue(
    const std::filesystem::path& dir_or_manifest) {
  if (std::filesystem::is_directory(dir_or_manifest)) {
    std::vector<std::filesystem::path> files;
    for (const auto& entry :
         std::filesystem::directory_iterator(dir_or_manifest)) {
      if (entry.is_regular_file() && entry.path().extension() == ".qasm") {
        files.push_back(entry.path());
      }
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) {
      throw ConfigError("no .qasm files in " + dir_or_manifest.string());
    }
    std::vector<QueueEntry> entries;
    int id = 0;
    for (const auto& file : files) {
      entries.push_back(load_queue_file(file, id, file.stem().string(),
                                        std::nullopt, std::nullopt,
                                        std::nullopt, std::nullopt));
      ++id;
    }
    return entries;
  }
  if (!std::filesystem::exists(dir_or_manifest)) {
    throw ConfigError("queue path does not exist: " +
                      dir_or_manifest.string());
  }
  return load_queue_manifest(dir_or_manifest);
}

std::vector<QueueEntry> sample_queue(const std::vector<QueueEntry>& queue,
                                     int n, std::uint64_t seed) {
  if (queue.empty()) {
    throw ConfigError("cannot sample from an empty queue");
  }
  if (n < 0) {
    throw ConfigError("sample size must be >= 0");
  }
  // Fixed generator so identical seeds reproduce identical queues on any
  // platform: mt19937_64 output reduced modulo the queue size.
  std::mt19937_64 engine(seed);
  std::vector<QueueEntry> sampled;
  sampled.reserve(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k) {
    const size_t index =
        static_cast<size_t>(engine() % static_cast<std::uint64_t>(queue.size()));
    QueueEntry entry = queue[index];
    entry.circuit.id = k;
    sampled.push_back(std::move(entry));
  }
  return sampled;
}

std::vector<Circuit> circuits_of(const std::vector<QueueEntry>& entries) {
  std::vector<Circuit> circuits;
  circuits.reserve(entries.size());
  for (const QueueEntry& entry : entries) {
    circuits.push_back(entry.circuit);
  }
  return circuits;
}

std::string schedule_to_json(const ScheduleFile& file) {
  json out;
  out["format"] = "circpack-schedule-v1";
  out["algorithm"] = file.schedule.algorithm_tag;
  out["topology"] = topology_json(file.topology);

  out["batches"] = json::array();
  for (const Batch& batch : file.schedule.batches) {
    json jb;
    jb["index"] = batch.index;
    jb["makespan"] = batch.makespan;
    jb["two_qubit_total"] = batch.two_qubit_total;
    jb["placements"] = json::array();
    for (const Placement& placement : batch.placements) {
      json jp;
      jp["circuit_id"] = placement.circuit_id;
      jp["trap"] = placement.trap_index;
      jp["qubit_start"] = placement.qubit_start;
      jp["layer_start"] = placement.layer_start;
      jp["depth"] = placement.depth;
      jp["width"] = placement.width;
      jb["placements"].push_back(std::move(jp));
    }
    out["batches"].push_back(std::move(jb));
  }

  json metrics;
  metrics["makespan"] = file.report.makespan;
  metrics["cutoffs"] = file.report.cutoff_count;
  metrics["estimated_shuttles"] = file.report.shuttles;
  metrics["avg_utilization"] = file.report.avg_utilization;
  if (file.report.lrf_percent) {
    metrics["lrf_percent"] = *file.report.lrf_percent;
  } else {
    metrics["lrf_percent"] = nullptr;
  }
  metrics["seconds"] = file.report.seconds;
  out["metrics"] = std::move(metrics);

  out["queue"] = json::array();
  for (const QueueEntry& entry : file.queue) {
    json jc;
    jc["id"] = entry.circuit.id;
    jc["name"] = entry.circuit.name;
    jc["file"] = entry.source_file;
    jc["width"] = entry.circuit.width;
    jc["depth"] = entry.circuit.depth;
    jc["two_qubit_count"] = entry.circuit.two_qubit_count;
    if (entry.circuit.ideal_outcome) {
      jc["ideal"] = *entry.circuit.ideal_outcome;
    }
    out["queue"].push_back(std::move(jc));
  }
  return out.dump(2) + "\n";
}

ScheduleFile schedule_from_json(std::string_view json_text) {
  json in;
  try {
    in = json::parse(json_text);
  } catch (const json::exception& error) {
    throw ParseError(std::string("schedule file: ") + error.what(), 1, 1);
  }

  ScheduleFile file;
  file.schedule.algorithm_tag = in.at("algorithm").get<std::string>();
  file.topology = topology_from_json(in.at("topology"));

  for (const json& jb : in.at("batches")) {
    Batch batch;
    batch.index = jb.at("index").get<int>();
    batch.makespan = jb.at("makespan").get<int>();
    batch.two_qubit_total = jb.at("two_qubit_total").get<long long>();
    for (const json& jp : jb.at("placements")) {
      Placement placement;
      placement.circuit_id = jp.at("circuit_id").get<int>();
      placement.trap_index = jp.at("trap").get<int>();
      placement.qubit_start = jp.at("qubit_start").get<int>();
      placement.layer_start = jp.at("layer_start").get<int>();
      placement.depth = jp.at("depth").get<int>();
      placement.width = jp.at("width").get<int>();
      batch.placements.push_back(placement);
    }
    file.schedule.total_makespan += batch.makespan;
    file.schedule.batches.push_back(std::move(batch));
  }

  const json& metrics = in.at("metrics");
  file.report.algorithm = file.schedule.algorithm_tag;
  file.report.makespan = metrics.at("makespan").get<long long>();
  file.report.cutoff_count = metrics.at("cutoffs").get<int>();
  file.report.shuttles = metrics.at("estimated_shuttles").get<long long>();
  file.report.avg_utilization = metrics.at("avg_utilization").get<double>();
  if (!metrics.at("lrf_percent").is_null()) {
    file.report.lrf_percent = metrics["lrf_percent"].get<double>();
  }
  file.report.seconds = metrics.at("seconds").get<double>();
  file.schedule.cutoff_count = file.report.cutoff_count;
  file.schedule.avg_utilization = file.report.avg_utilization;

  for (const json& jc : in.at("queue")) {
    QueueEntry entry;
    entry.circuit.id = jc.at("id").get<int>();
    entry.circuit.name = jc.at("name").get<std::string>();
    entry.circuit.width = jc.at("width").get<int>();
    entry.circuit.depth = jc.at("depth").get<int>();
    entry.circuit.two_qubit_count = jc.at("two_qubit_count").get<long long>();
    entry.circuit.area =
        static_cast<long long>(entry.circuit.width) * entry.circuit.depth;
    if (jc.contains("ideal")) {
      entry.circuit.ideal_outcome = jc["ideal"].get<std::string>();
    }
    entry.source_file = jc.at("file").get<std::string>();
    file.queue.push_back(std::move(entry));
  }
  return file;
}

void save_schedule(const ScheduleFile& file,
                   const std::filesystem::path& path) {
  write_text_file(path, schedule_to_json(file));
}

ScheduleFile load_schedule(const std::filesystem::path& path) {
  return schedule_from_json(read_text_file(path));
}

qasm::Counts parse_counts(std::string_view text) {
  qasm::Counts counts;
  std::stringstream stream{std::string(text)};
  std::string raw_line;
  int line_number = 0;
  while (std::getline(stream, raw_line)) {
    ++line_number;
    const auto comment = raw_line.find('#');
    if (comment != std::string::npos) {
      raw_line.resize(comment);
    }
    const std::string line = trim(raw_line);
    if (line.empty()) {
      continue;
    }
    std::stringstream fields(line);
    std::string bits;
    long long shots = -1;
    fields >> bits >> shots;
    if (shots < 0 || !std::all_of(bits.begin(), bits.end(), [](char c) {
          return c == '0' || c == '1';
        })) {
      throw ParseError("expected '<bitstring> <count>'", line_number, 1);
    }
    counts[bits] += shots;
  }
  return counts;
}

qasm::Counts load_counts(const std::filesystem::path& path) {
  return parse_counts(read_text_file(path));
}

std::string counts_to_text(const qasm::Counts& counts) {
  std::string out;
  for (const auto& [bits, shots] : counts) {
    out += bits + " " + std::to_string(shots) + "\n";
  }
  return out;
}

std::vector<qasm::RegisterField> LayoutSidecar::fields() const {
  std::vector<qasm::RegisterField> out;
  out.reserve(registers.size());
  for (const SidecarRegister& reg : registers) {
    out.push_back(reg.field);
  }
  return out;
}

std::string sidecar_to_json(const LayoutSidecar& sidecar) {
  json out;
  out["format"] = "circpack-layout-v1";
  out["batch"] = sidecar.batch_index;
  out["registers"] = json::array();
  for (const SidecarRegister& reg : sidecar.registers) {
    json jr;
    jr["circuit_id"] = reg.field.circuit_id;
    jr["name"] = reg.field.creg_name;
    jr["bits"] = reg.field.bits;
    jr["circuit"] = reg.circuit_name;
    if (reg.ideal_outcome) {
      jr["ideal"] = *reg.ideal_outcome;
    }
    out["registers"].push_back(std::move(jr));
  }
  return out.dump(2) + "\n";
}

LayoutSidecar sidecar_from_json(std::string_view json_text) {
  json in;
  try {
    in = json::parse(json_text);
  } catch (const json::exception& error) {
    throw ParseError(std::string("layout sidecar: ") + error.what(), 1, 1);
  }
  LayoutSidecar sidecar;
  sidecar.batch_index = in.at("batch").get<int>();
  for (const json& jr : in.at("registers")) {
    SidecarRegister reg;
    reg.field.circuit_id = jr.at("circuit_id").get<int>();
    reg.field.creg_name = jr.at("name").get<std::string>();
    reg.field.bits = jr.at("bits").get<int>();
    reg.circuit_name = jr.contains("circuit")
                           ? jr["circuit"].get<std::string>()
                           : std::string();
    if (jr.contains("ideal")) {
      reg.ideal_outcome = jr["ideal"].get<std::string>();
    }
    sidecar.registers.push_back(std::move(reg));
  }
  return sidecar;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream stream(path, std::ios::binary);
  if (!stream) {
    throw Error("cannot read " + path.string());
  }
  std::stringstream buffer;
  buffer << stream.rdbuf();
  return buffer.str();
}

void write_text_file(const std::filesystem::path& path,
                     std::string_view content) {
  std::ofstream stream(path, std::ios::binary);
  if (!stream) {
    throw Error("cannot write " + path.string());
  }
  stream << content;
  if (!stream) {
    throw Error("failed writing " + path.string());
  }
}

}  // namespace circpack
