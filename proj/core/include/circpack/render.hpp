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

#include <string>
#include <vector>

namespace circpack {

/// Gantt chart of a schedule as an SVG 1.1 document. Physical qubits run
/// down the y-axis (trap boundaries drawn as horizontal rules), layers along
/// the x-axis (batch boundaries as vertical rules). Each placement is one
/// labeled rectangle with a color derived deterministically from its circuit
/// id. `circuits` is only consulted for labels and may be empty.
std::string gantt_svg(const Schedule& schedule,
                      const std::vector<Circuit>& circuits,
                      const DeviceTopology& topology);

/// Gantt chart as an aligned text grid: one character cell per
/// (qubit, layer), showing the circuit's id glyph or '.' when idle. Trap row
/// groups are separated by a rule line.
std::string gantt_text(const Schedule& schedule,
                       const std::vector<Circuit>& circuits,
                       const DeviceTopology& topology);

}  // namespace circpack
