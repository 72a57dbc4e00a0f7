/*
 * Copyright 2026 The Evigrid Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef EVIGRID_EVAL_HPP_
#define EVIGRID_EVAL_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "evigrid/grid.hpp"

namespace evigrid {

enum class CellClass { kFree, kOccupied, kUnknown };

// argmax over (m_f, m_o, m_u); any tie resolves to unknown.
CellClass classify(const MassFunction& m);

// Intersection over union per class, in percent. A class absent from both
// grids scores 100.
struct ClassIou {
  double free = 0.0;
  double occupied = 0.0;
  double unknown = 0.0;

  friend bool operator==(const ClassIou&, const ClassIou&) = default;
};

// Throws std::invalid_argument on a geometry mismatch.
ClassIou evaluate(const EvidenceGrid& map, const EvidenceGrid& reference);

struct EvalReport {
  std::string variant;
  std::string label;
  std::string config_hash;
  ClassIou final_iou;                         // against the reference map
  std::optional<ClassIou> ground_truth_iou;   // against the simulator's world grid
  std::vector<ClassIou> series;               // per epoch, against the reference
};

std::string fnv1a_hex(std::string_view bytes);

std::string report_json(const EvalReport& report);
// Throws ConfigError on schema mismatch.
EvalReport parse_report_json(const std::string& text);

void write_report_json(const EvalReport& report, const std::filesystem::path& path);
// One row per epoch: epoch, free, occupied, unknown.
void write_report_csv(const EvalReport& report, const std::filesystem::path& path);
EvalReport read_report_json(const std::filesystem::path& path);

// Table of final scores, one row per report.
std::string comparison_table(const std::vector<EvalReport>& reports);

}  // namespace evigrid

#endif  // EVIGRID_EVAL_HPP_
