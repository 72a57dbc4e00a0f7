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

#ifndef EVIGRID_DEEP_ISM_HPP_
#define EVIGRID_DEEP_ISM_HPP_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string_view>

#include "evigrid/grid.hpp"
#include "evigrid/world.hpp"

namespace evigrid {

// How the upper bound on the discount factor is derived.
//  kPaper: (m_u + K - floor) / (m_u (1 - p_u)), K from the undiscounted
//          prediction.
//  kExact: (m_u - floor) / (m_u (1 - p_u) - K), which accounts for the
//          conflict shrinking with the discount; never lets a fused cell
//          drop below the floor.
enum class GammaMode { kPaper, kExact };

std::string_view to_string(GammaMode mode);
GammaMode gamma_mode_from_string(std::string_view name);

struct FusionParams {
  double unknown_floor = 0.3;
  double tanh_gain = 10.0;
  int accumulation_window = 10;
  GammaMode gamma_mode = GammaMode::kExact;

  void validate() const;
};

// Unknown mass the prediction would remove from the map cell; positive when
// the prediction is more informative than the map.
double delta_unknown(const MassFunction& map_cell, const MassFunction& prediction_cell);

// Discount factor for a prediction already limited to the unknown floor.
// Zero whenever the prediction carries no unknown-mass reduction.
double compute_gamma(const MassFunction& map_cell, const MassFunction& limited_prediction,
                     const FusionParams& params);

// Floor-limit, discount by the redundancy-aware factor, then Yager-combine
// with the map cell.
MassFunction integrate_prediction(const MassFunction& map_cell, const MassFunction& raw_prediction,
                                  const FusionParams& params);

void integrate_prediction_grid(EvidenceGrid& map, const EvidenceGrid& prediction,
                               const FusionParams& params, int threads = 1);

// Stand-in for a trained deep inverse radar model.
//
// Let d be the distance from a cell to the nearest accumulated detection.
// Within `support_radius` the prediction follows the ground-truth label with
// committed mass certainty_cap * exp(-d / decay_length); on free cells a
// fraction `occupied_bias` of the free mass is moved to occupied. Outside the
// support the model has nothing to go on and only emits its occupied bias,
// [0, occupied_bias, 1 - occupied_bias]. With probability `outlier_rate` a
// supported cell is replaced by a confident prediction of the wrong label.
struct SurrogateParams {
  double certainty_cap = 0.9;
  double decay_length = 4.0;
  double occupied_bias = 0.05;
  double support_radius = 8.0;
  double outlier_rate = 0.0;
  std::uint64_t rng_seed = 0;

  void validate() const;
};

// `scans` are pose-compensated into the grid frame; `frame_in_world` places
// the grid frame in the world for label lookup. `epoch` decorrelates the
// outlier draws between calls.
EvidenceGrid surrogate_predict(std::span<const Scan> scans, const World& world,
                               const Pose2D& frame_in_world, const SurrogateParams& params,
                               const GridGeometry& geometry, std::uint64_t epoch = 0);

// Reads an externally produced prediction: a three-plane EVGR mass grid or a
// two-plane (e_f, e_o) evidence grid converted through the subjective-logic
// mapping. The file geometry must match `geometry`; throws IoError otherwise.
EvidenceGrid load_prediction(const std::filesystem::path& path, const GridGeometry& geometry);

}  // namespace evigrid

#endif  // EVIGRID_DEEP_ISM_HPP_
