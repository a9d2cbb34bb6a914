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

#include "circpack/render.hpp"

#include <string>
#include <unordered_map>
#include <vector>

namespace circpack {

namespace {

constexpr int kLayerScale = 8;   // px per layer
constexpr int kQubitScale = 14;  // px per qubit
constexpr int kMarginLeft = 46;
constexpr int kMarginTop = 18;
constexpr int kMarginBottom = 24;
constexpr int kMarginRight = 10;

char id_glyph(int circuit_id) {
  static const char kGlyphs[] =
      "0123456789abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ";
  return kGlyphs[static_cast<unsigned>(circuit_id) % 62u];
}

/// Stable, well-spread hue per circuit id (golden-angle walk).
std::string id_color(int circuit_id) {
  const unsigned hue = (static_cast<unsigned>(circuit_id) * 137u) % 360u;
  return "hsl(" + std::to_string(hue) + ",62%,72%)";
}

std::string xml_escape(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::unordered_map<int, std::string> name_lookup(
    const std::vector<Circuit>& circuits) {
  std::unordered_map<int, std::string> names;
  for (const Circuit& circuit : circuits) {
    names.emplace(circuit.id, circuit.name);
  }
  return names;
}

}  // namespace

std::string gantt_svg(const Schedule& schedule,
                      const std::vector<Circuit>& circuits,
                      const DeviceTopology& topology) {
  const auto names = name_lookup(circuits);
  const long long layers = schedule.total_makespan;
  const int chart_w = static_cast<int>(layers) * kLayerScale;
  const int chart_h = topology.total_qubits * kQubitScale;
  const int width = kMarginLeft + chart_w + kMarginRight;
  const int height = kMarginTop + chart_h + kMarginBottom;

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         std::to_string(width) + "\" height=\"" + std::to_string(height) +
         "\" viewBox=\"0 0 " + std::to_string(width) + " " +
         std::to_string(height) + "\">\n";

  const auto hline = [&](int y, const std::string& style) {
    svg += "<line x1=\"" + std::to_string(kMarginLeft) + "\" y1=\"" +
           std::to_string(y) + "\" x2=\"" +
           std::to_string(kMarginLeft + chart_w) + "\" y2=\"" +
           std::to_string(y) + "\" " + style + "/>\n";
  };
  const auto vline = [&](int x, const std::string& style) {
    svg += "<line x1=\"" + std::to_string(x) + "\" y1=\"" +
           std::to_string(kMarginTop) + "\" x2=\"" + std::to_string(x) +
           "\" y2=\"" + std::to_string(kMarginTop + chart_h) + "\" " + style +
           "/>\n";
  };

  // Axes and trap boundaries.
  const std::string axis = "stroke=\"#333\" stroke-width=\"1\"";
  hline(kMarginTop, axis);
  vline(kMarginLeft, axis);
  hline(kMarginTop + chart_h, axis);
  if (chart_w > 0) {
    vline(kMarginLeft + chart_w, axis);
  }
  int qubit_offset = 0;
  for (size_t t = 0; t + 1 < topology.traps.size(); ++t) {
    qubit_offset += topology.traps[t];
    hline(kMarginTop + qubit_offset * kQubitScale,
          "stroke=\"#555\" stroke-width=\"1\" stroke-dasharray=\"6,3\"");
  }

  // Trap labels.
  qubit_offset = 0;
  for (size_t t = 0; t < topology.traps.size(); ++t) {
    const int mid =
        kMarginTop + (qubit_offset + topology.traps[t] / 2) * kQubitScale + 4;
    svg += "<text x=\"4\" y=\"" + std::to_string(mid) +
           "\" font-size=\"10\" font-family=\"monospace\">T" +
           std::to_string(t) + "</text>\n";
    qubit_offset += topology.traps[t];
  }

  // Batch boundaries on the concatenated time axis.
  long long offset = 0;
  for (size_t b = 0; b + 1 < schedule.batches.size(); ++b) {
    offset += schedule.batches[b].makespan;
    vline(kMarginLeft + static_cast<int>(offset) * kLayerScale,
          "stroke=\"#a00\" stroke-width=\"1\" stroke-dasharray=\"3,3\"");
  }

  // Placement rectangles.
  offset = 0;
  for (const Batch& batch : schedule.batches) {
    for (const Placement& placement : batch.placements) {
      const int x = kMarginLeft +
                    static_cast<int>(offset + placement.layer_start) *
                        kLayerScale;
      const int y = kMarginTop +
                    placement.physical_qubit_start(topology) * kQubitScale;
      const int w = placement.depth * kLayerScale;
      const int h = placement.width * kQubitScale;
      svg += "<rect x=\"" + std::to_string(x) + "\" y=\"" +
             std::to_string(y) + "\" width=\"" + std::to_string(w) +
             "\" height=\"" + std::to_string(h) + "\" fill=\"" +
             id_color(placement.circuit_id) +
             "\" stroke=\"#222\" stroke-width=\"1\"/>\n";

      const auto it = names.find(placement.circuit_id);
      const std::string label =
          (it != names.end() && !it->second.empty())
              ? it->second + " #" + std::to_string(placement.circuit_id)
              : "#" + std::to_string(placement.circuit_id);
      svg += "<text x=\"" + std::to_string(x + 2) + "\" y=\"" +
             std::to_string(y + h / 2 + 3) +
             "\" font-size=\"9\" font-family=\"monospace\">" +
             xml_escape(label) + "</text>\n";
    }
    offset += batch.makespan;
  }

  // Bottom scale.
  svg += "<text x=\"" + std::to_string(kMarginLeft) + "\" y=\"" +
         std::to_string(kMarginTop + chart_h + 16) +
         "\" font-size=\"10\" font-family=\"monospace\">" +
         std::to_string(layers) + " layers, " +
         std::to_string(schedule.batches.size()) + " batch(es)</text>\n";
  svg += "</svg>\n";
  return svg;
}

std::string gantt_text(const Schedule& schedule,
                       const std::vector<Circuit>& /*circuits*/,
                       const DeviceTopology& topology) {
  const long long layers = schedule.total_makespan;
  std::vector<std::string> rows(
      static_cast<size_t>(topology.total_qubits),
      std::string(static_cast<size_t>(layers), '.'));

  long long offset = 0;
  for (const Batch& batch : schedule.batches) {
    for (const Placement& placement : batch.placements) {
      const int qubit0 = placement.physical_qubit_start(topology);
      const char glyph = id_glyph(placement.circuit_id);
      for (int q = qubit0; q < qubit0 + placement.width; ++q) {
        for (long long t = offset + placement.layer_start;
             t < offset + placement.layer_end(); ++t) {
          rows[static_cast<size_t>(q)][static_cast<size_t>(t)] = glyph;
        }
      }
    }
    offset += batch.makespan;
  }

  const std::string rule(static_cast<size_t>(std::max<long long>(layers, 1)),
                         '-');
  std::string out;
  int qubit = 0;
  for (size_t t = 0; t < topology.traps.size(); ++t) {
    if (t > 0) {
      out += rule;
      out += "\n";
    }
    for (int q = 0; q < topology.traps[t]; ++q, ++qubit) {
      out += rows[static_cast<size_t>(qubit)];
      out += "\n";
    }
  }
  return out;
}

}  // namespace circpack
