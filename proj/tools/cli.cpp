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

#include "cli.hpp"

#include "circpack/cluster.hpp"
#include "circpack/errors.hpp"
#include "circpack/io.hpp"
#include "circpack/metrics.hpp"
#include "circpack/packing.hpp"
#include "circpack/qasm.hpp"
#include "circpack/render.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <map>
#include <optional>
#include <unordered_map>

namespace circpack::cli {

namespace {

namespace fs = std::filesystem;

struct Timer {
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start)
        .count();
  }
};

DeviceTopology load_topology_with_alpha(const std::string& path,
                                        std::optional<int> alpha_override) {
  DeviceTopology topology = load_topology(path);
  if (alpha_override) {
    topology = make_topology(topology.traps, *alpha_override);
  }
  return topology;
}

long long serial_layers_of(const std::vector<Circuit>& circuits) {
  long long layers = 0;
  for (const Circuit& circuit : circuits) {
    layers += circuit.depth;
  }
  return layers;
}

std::string lrf_cell(const ScheduleReport& report, bool serial) {
  if (serial || !report.lrf_percent) {
    return "---";
  }
  return fmt::format("{:.2f}%", *report.lrf_percent);
}

std::string report_line(const ScheduleReport& report, bool serial) {
  return fmt::format(
      "{}: makespan={} cutoffs={} shuttles(est)={} util={:.2f}% lrf={} "
      "time={:.4f}s",
      report.algorithm, report.makespan, report.cutoff_count, report.shuttles,
      report.avg_utilization * 100.0, lrf_cell(report, serial),
      report.seconds);
}

// --- schedule -----------------------------------------------------------

struct ScheduleArgs {
  std::string topology_path;
  std::string queue_path;
  std::string algo = "circpack";
  std::string out_path;
  std::string svg_path;
  std::string text_path;
  std::optional<int> alpha;
  std::optional<int> sample;
  std::uint64_t seed = 0;
};

int cmd_schedule(const ScheduleArgs& args, std::ostream& out) {
  const DeviceTopology topology =
      load_topology_with_alpha(args.topology_path, args.alpha);
  const Algorithm algorithm = algorithm_from_name(args.algo);

  std::vector<QueueEntry> entries = load_queue(args.queue_path);
  if (args.sample) {
    entries = sample_queue(entries, *args.sample, args.seed);
  }
  const std::vector<Circuit> circuits = circuits_of(entries);

  const Timer timer;
  const Schedule schedule = pack(algorithm, circuits, topology);
  const double seconds = timer.seconds();

  const ScheduleReport report = schedule_report(
      schedule, circuits, topology, serial_layers_of(circuits), seconds);

  ScheduleFile file;
  file.schedule = schedule;
  file.topology = topology;
  file.report = report;
  file.queue = entries;
  save_schedule(file, args.out_path);

  if (!args.svg_path.empty()) {
    write_text_file(args.svg_path, gantt_svg(schedule, circuits, topology));
  }
  if (!args.text_path.empty()) {
    write_text_file(args.text_path, gantt_text(schedule, circuits, topology));
  }

  out << report_line(report, algorithm == Algorithm::Serial) << "\n";
  return 0;
}

// --- bench ---------------------------------------------------------------

struct BenchArgs {
  std::string topology_path;
  std::string queue_path;
  std::vector<int> sizes = {20, 100, 150, 200};
  std::uint64_t seed = 0;
  std::optional<int> alpha;
  std::string csv_path;
};

int cmd_bench(const BenchArgs& args, std::ostream& out) {
  const DeviceTopology topology =
      load_topology_with_alpha(args.topology_path, args.alpha);
  const std::vector<QueueEntry> base = load_queue(args.queue_path);

  out << fmt::format("{:>5}  {:<9} {:>9} {:>8} {:>13} {:>9} {:>8} {:>9}\n",
                     "size", "algorithm", "makespan", "cutoffs",
                     "shuttles(est)", "avg_util", "lrf", "time");
  // time is wall-clock and excluded from the CSV so identical seeds give
  // byte-identical files
  std::string csv =
      "size,algorithm,makespan,cutoffs,estimated_shuttles,avg_util_pct,"
      "lrf_pct\n";

  for (const int size : args.sizes) {
    // one seed for every size: smaller queues are prefixes of larger ones
    const auto entries = sample_queue(base, size, args.seed);
    const std::vector<Circuit> circuits = circuits_of(entries);
    const long long serial_layers = serial_layers_of(circuits);

    for (const Algorithm algorithm :
         {Algorithm::Serial, Algorithm::Fifo, Algorithm::Skyline,
          Algorithm::CircPack}) {
      const Timer timer;
      const Schedule schedule = pack(algorithm, circuits, topology);
      const double seconds = timer.seconds();
      const ScheduleReport report = schedule_report(
          schedule, circuits, topology, serial_layers, seconds);
      const bool serial = algorithm == Algorithm::Serial;

      out << fmt::format(
          "{:>5}  {:<9} {:>9} {:>8} {:>13} {:>8.2f}% {:>8} {:>9}\n", size,
          report.algorithm, report.makespan, report.cutoff_count,
          report.shuttles, report.avg_utilization * 100.0,
          lrf_cell(report, serial),
          serial ? "---" : fmt::format("{:.4f}s", report.seconds));
      csv += fmt::format(
          "{},{},{},{},{},{:.4f},{}\n", size, report.algorithm,
          report.makespan, report.cutoff_count, report.shuttles,
          report.avg_utilization * 100.0,
          serial ? "" : fmt::format("{:.4f}", *report.lrf_percent));
    }
  }
  if (!args.csv_path.empty()) {
    write_text_file(args.csv_path, csv);
  }
  return 0;
}

// --- cluster ---------------------------------------------------------------

struct ClusterArgs {
  std::string topology_path;
  std::string queue_path;
  int workers = 1;
  std::optional<int> size;
  std::uint64_t seed = 0;
  std::string algo = "circpack";
  std::optional<int> alpha;
  std::string out_dir;
};

int cmd_cluster(const ClusterArgs& args, std::ostream& out) {
  if (args.workers < 1) {
    throw ConfigError("--workers must be >= 1");
  }
  const DeviceTopology topology =
      load_topology_with_alpha(args.topology_path, args.alpha);
  const Algorithm algorithm = algorithm_from_name(args.algo);

  std::vector<QueueEntry> entries = load_queue(args.queue_path);
  if (args.size) {
    entries = sample_queue(entries, *args.size, args.seed);
  }
  const std::vector<Circuit> circuits = circuits_of(entries);

  const std::vector<DeviceTopology> topologies(
      static_cast<size_t>(args.workers), topology);
  const auto results = schedule_cluster(circuits, topologies, algorithm);

  std::unordered_map<int, const QueueEntry*> entry_by_id;
  for (const QueueEntry& entry : entries) {
    entry_by_id.emplace(entry.circuit.id, &entry);
  }

  out << fmt::format("{:>6} {:>9} {:>9} {:>9} {:>9}\n", "worker", "circuits",
                     "makespan", "avg_util", "time");
  std::vector<double> utils;
  std::vector<long long> spans;
  for (size_t w = 0; w < results.size(); ++w) {
    const WorkerSchedule& worker = results[w];
    const double util = worker.schedule.avg_utilization;
    utils.push_back(util);
    spans.push_back(worker.schedule.total_makespan);
    out << fmt::format("{:>6} {:>9} {:>9} {:>8.2f}% {:>8.4f}s\n", w,
                       worker.circuit_ids.size(),
                       worker.schedule.total_makespan, util * 100.0,
                       worker.pack_seconds);

    if (!args.out_dir.empty()) {
      std::vector<Circuit> assigned;
      std::vector<QueueEntry> assigned_entries;
      for (int id : worker.circuit_ids) {
        assigned.push_back(entry_by_id.at(id)->circuit);
        assigned_entries.push_back(*entry_by_id.at(id));
      }
      ScheduleFile file;
      file.schedule = worker.schedule;
      file.topology = topology;
      file.report = schedule_report(worker.schedule, assigned, topology,
                                    serial_layers_of(assigned),
                                    worker.pack_seconds);
      file.queue = std::move(assigned_entries);
      fs::create_directories(args.out_dir);
      save_schedule(file, fs::path(args.out_dir) /
                              fmt::format("worker_{}.schedule.json", w));
    }
  }

  const auto [min_span, max_span] =
      std::minmax_element(spans.begin(), spans.end());
  const auto [min_util, max_util] =
      std::minmax_element(utils.begin(), utils.end());
  const double span_spread =
      *max_span > 0 ? 100.0 * static_cast<double>(*max_span - *min_span) /
                          static_cast<double>(*max_span)
                    : 0.0;
  const double util_spread = (*max_util - *min_util) * 100.0;
  out << fmt::format("spread: makespan {:.2f}%, utilization {:.2f}pp\n",
                     span_spread, util_spread);
  return 0;
}

// --- combine ---------------------------------------------------------------

struct CombineArgs {
  std::string schedule_path;
  std::string queue_path;
  std::optional<int> batch;
  std::string out_dir = ".";
};

/// Re-parses the circuits named by a schedule file's queue section.
/// Paths are tried as stored first, then by file name under the queue
/// directory given on the command line.
std::vector<Circuit> reload_circuits(const ScheduleFile& file,
                                     const std::string& queue_dir) {
  std::map<std::string, std::string> text_cache;
  std::vector<Circuit> circuits;
  for (const QueueEntry& entry : file.queue) {
    fs::path path = entry.source_file;
    if (!fs::exists(path) && !queue_dir.empty()) {
      path = fs::path(queue_dir) / path.filename();
    }
    if (!fs::exists(path)) {
      throw ConfigError("cannot find circuit source '" + entry.source_file +
                        "' (looked in '" + queue_dir + "' too)");
    }
    auto [it, inserted] = text_cache.try_emplace(path.string());
    if (inserted) {
      it->second = read_text_file(path);
    }
    Circuit parsed = qasm::parse_program(it->second, entry.circuit.id,
                                         entry.circuit.name);
    if (parsed.width != entry.circuit.width) {
      throw ConsistencyError(
          "circuit '" + entry.circuit.name + "' re-parsed with width " +
          std::to_string(parsed.width) + ", schedule recorded " +
          std::to_string(entry.circuit.width));
    }
    // keep the schedule's pinned metrics so placements stay consistent
    Circuit circuit = make_circuit_with_metrics(
        entry.circuit.id, entry.circuit.name, entry.circuit.width,
        std::move(parsed.gates), entry.circuit.depth,
        entry.circuit.two_qubit_count, entry.circuit.ideal_outcome);
    circuits.push_back(std::move(circuit));
  }
  return circuits;
}

int cmd_combine(const CombineArgs& args, std::ostream& out) {
  if (args.batch && *args.batch < 0) {
    throw ConfigError("--batch must be >= 0");
  }
  const ScheduleFile file = load_schedule(args.schedule_path);
  const std::vector<Circuit> circuits =
      reload_circuits(file, args.queue_path);

  std::unordered_map<int, const Circuit*> by_id;
  for (const Circuit& circuit : circuits) {
    by_id.emplace(circuit.id, &circuit);
  }

  fs::create_directories(args.out_dir);
  for (const Batch& batch : file.schedule.batches) {
    if (args.batch && batch.index != *args.batch) {
      continue;
    }
    const auto program = qasm::emit_combined(batch, circuits, file.topology);

    LayoutSidecar sidecar;
    sidecar.batch_index = batch.index;
    for (const auto& field : program.register_layout) {
      const Circuit& circuit = *by_id.at(field.circuit_id);
      sidecar.registers.push_back(
          {field, circuit.name, circuit.ideal_outcome});
    }

    const fs::path qasm_path =
        fs::path(args.out_dir) / fmt::format("batch_{}.qasm", batch.index);
    const fs::path layout_path =
        fs::path(args.out_dir) /
        fmt::format("batch_{}.layout.json", batch.index);
    write_text_file(qasm_path, program.text);
    write_text_file(layout_path, sidecar_to_json(sidecar));
    out << fmt::format("batch {}: {} circuits -> {}\n", batch.index,
                       batch.placements.size(), qasm_path.string());
  }
  if (args.batch &&
      static_cast<size_t>(*args.batch) >= file.schedule.batches.size()) {
    throw ConfigError("schedule has no batch " + std::to_string(*args.batch));
  }
  return 0;
}

// --- unbundle ---------------------------------------------------------------

struct UnbundleArgs {
  std::string counts_path;
  std::string layout_path;
  std::string out_dir;
};

int cmd_unbundle(const UnbundleArgs& args, std::ostream& out) {
  const qasm::Counts counts = load_counts(args.counts_path);
  const LayoutSidecar sidecar =
      sidecar_from_json(read_text_file(args.layout_path));

  const auto per_circuit = qasm::unbundle(counts, sidecar.fields());

  out << fmt::format("{:>10} {:<16} {:>7} {:>9} {:>8}\n", "register",
                     "circuit", "shots", "outcomes", "pst");
  for (const SidecarRegister& reg : sidecar.registers) {
    const qasm::Counts& marginal = per_circuit.at(reg.field.circuit_id);
    long long shots = 0;
    for (const auto& [bits, n] : marginal) {
      shots += n;
    }
    std::string pst_cell = "---";
    if (reg.ideal_outcome && !marginal.empty()) {
      pst_cell =
          fmt::format("{:.2f}%", qasm::pst(marginal, *reg.ideal_outcome));
    }
    out << fmt::format("{:>10} {:<16} {:>7} {:>9} {:>8}\n",
                       reg.field.creg_name, reg.circuit_name, shots,
                       marginal.size(), pst_cell);

    if (!args.out_dir.empty()) {
      fs::create_directories(args.out_dir);
      write_text_file(fs::path(args.out_dir) / (reg.field.creg_name +
                                                ".counts"),
                      counts_to_text(marginal));
    }
  }
  return 0;
}

}  // namespace

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"circpack: multi-programmed circuit scheduling for modular "
               "trapped-ion devices"};
  app.require_subcommand(1);

  ScheduleArgs schedule_args;
  auto* schedule = app.add_subcommand(
      "schedule", "Pack a queue of circuits into a device schedule");
  schedule->add_option("--topology", schedule_args.topology_path,
                       "Topology file")->required();
  schedule->add_option("--queue", schedule_args.queue_path,
                       "Directory of .qasm files or a JSON manifest")
      ->required();
  schedule->add_option("--algo", schedule_args.algo,
                       "circpack | fifo | skyline | serial");
  schedule->add_option("--out", schedule_args.out_path, "Schedule JSON path")
      ->required();
  schedule->add_option("--svg", schedule_args.svg_path,
                       "Optional Gantt chart output");
  schedule->add_option("--text", schedule_args.text_path,
                       "Optional text-grid Gantt output");
  schedule->add_option("--alpha", schedule_args.alpha,
                       "Override the topology's 2-qubit-gate cutoff");
  schedule->add_option("--sample", schedule_args.sample,
                       "Sample N circuits from the queue with replacement");
  schedule->add_option("--seed", schedule_args.seed, "Sampling seed");

  BenchArgs bench_args;
  auto* bench = app.add_subcommand(
      "bench", "Compare all packers over sampled queue sizes");
  bench->add_option("--topology", bench_args.topology_path, "Topology file")
      ->required();
  bench->add_option("--queue", bench_args.queue_path, "Queue dir or manifest")
      ->required();
  bench->add_option("--sizes", bench_args.sizes,
                    "Queue sizes to sample")->delimiter(',');
  bench->add_option("--seed", bench_args.seed, "Sampling seed");
  bench->add_option("--alpha", bench_args.alpha, "Cutoff override");
  bench->add_option("--csv", bench_args.csv_path,
                    "Write machine-readable results here");

  ClusterArgs cluster_args;
  auto* cluster = app.add_subcommand(
      "cluster", "Balanced multi-worker scheduling simulation");
  cluster->add_option("--topology", cluster_args.topology_path,
                      "Per-worker topology file")->required();
  cluster->add_option("--queue", cluster_args.queue_path,
                      "Queue dir or manifest")->required();
  cluster->add_option("--workers", cluster_args.workers, "Worker count")
      ->required();
  cluster->add_option("--size", cluster_args.size,
                      "Sample N circuits from the queue");
  cluster->add_option("--seed", cluster_args.seed, "Sampling seed");
  cluster->add_option("--algo", cluster_args.algo, "Packer per worker");
  cluster->add_option("--alpha", cluster_args.alpha, "Cutoff override");
  cluster->add_option("--out-dir", cluster_args.out_dir,
                      "Write per-worker schedule files here");

  CombineArgs combine_args;
  auto* combine = app.add_subcommand(
      "combine", "Emit one multi-programmed QASM per scheduled batch");
  combine->add_option("--schedule", combine_args.schedule_path,
                      "Schedule JSON")->required();
  combine->add_option("--queue", combine_args.queue_path,
                      "Queue directory used to resolve circuit sources");
  combine->add_option("--batch", combine_args.batch,
                      "Only this batch index");
  combine->add_option("--out-dir", combine_args.out_dir, "Output directory");

  UnbundleArgs unbundle_args;
  auto* unbundle = app.add_subcommand(
      "unbundle", "Split combined result counts back into per-circuit "
                  "counts");
  unbundle->add_option("--counts", unbundle_args.counts_path,
                       "Counts file: one '<bitstring> <count>' per line")
      ->required();
  unbundle->add_option("--layout", unbundle_args.layout_path,
                       "Register layout sidecar from 'combine'")->required();
  unbundle->add_option("--out-dir", unbundle_args.out_dir,
                       "Write per-circuit counts files here");

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& error) {
    if (error.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "error: " << error.what() << "\n";
    return error.get_exit_code();
  }

  try {
    if (schedule->parsed()) return cmd_schedule(schedule_args, out);
    if (bench->parsed()) return cmd_bench(bench_args, out);
    if (cluster->parsed()) return cmd_cluster(cluster_args, out);
    if (combine->parsed()) return cmd_combine(combine_args, out);
    if (unbundle->parsed()) return cmd_unbundle(unbundle_args, out);
  } catch (const Error& error) {
    err << "error: " << error.what() << "\n";
    return 1;
  } catch (const std::exception& error) {
    err << "internal error: " << error.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace circpack::cli
