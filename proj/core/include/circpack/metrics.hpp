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

#include <optional>
#include <string>
#include <vector>

namespace circpack {

/// Time-averaged qubit utilization: sum of placed circuit areas over the
/// qubit-time container area (total_qubits * total makespan). Returns
/// nullopt for an empty schedule (zero makespan), where the metric is
/// undefined.
std::optional<double> avg_utilization(const Schedule& schedule,
                                      int total_qubits);

/// Fraction of qubits covered by a placement at global layer `t` (batches
/// laid end to end). Throws std::out_of_range for t outside
/// [0, total_makespan).
double instantaneous_utilization(const Schedule& schedule, int total_qubits,
                                 long long t);

/// Layer reduction factor: 100 * (serial_layers - makespan) / serial_layers.
/// Requires serial_layers >= makespan >= 0 and serial_layers > 0; throws
/// ConfigError otherwise.
double lrf(long long serial_layers, long long makespan);

/// Estimated shuttle count: two-qubit gates whose operands land in different
/// traps under the identity intra-placement mapping (logical k -> placement
/// start + k). Trap-confined placements contribute zero by construction.
///
/// This is a stand-in estimator for a full shuttling compiler; it is labeled
/// as an estimate wherever it is reported.
long long estimate_shuttles(const Schedule& schedule,
                            const std::vector<Circuit>& circuits,
                            const DeviceTopology& topology);

/// One row of the schedule-quality comparison table.
struct ScheduleReport {
  std::string algorithm;
  long long makespan = 0;
  int cutoff_count = 0;
  long long shuttles = 0;              // estimated
  double avg_utilization = 0.0;        // fraction
  std::optional<double> lrf_percent;   // absent when the reference is empty
  double seconds = 0.0;                // wall-clock time of the packer call
};

/// Bundles the schedule metrics against a serial reference layer count.
/// `seconds` is the wall-clock time measured around the packer call by the
/// caller. lrf_percent is empty when serial_reference_layers is 0 (empty
/// queue); the serial baseline against itself reports 0.
ScheduleReport schedule_report(const Schedule& schedule,
                               const std::vector<Circuit>& circuits,
                               const DeviceTopology& topology,
                               long long serial_reference_layers,
                               double seconds);

}  // namespace circpack
