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

#ifndef EVIGRID_PIPELINE_HPP_
#define EVIGRID_PIPELINE_HPP_

#include <cstdint>
#include <deque>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "evigrid/deep_ism.hpp"
#include "evigrid/geometric_ism.hpp"
#include "evigrid/recording.hpp"

namespace evigrid {

enum class MappingVariant {
  kRayIlmDempster,
  kDeepIrmAccumulated,
  kDeepIrmReplace,
  kDeepIrmDiscounted,
  kRayIrmDempster,
  kFusedIrm,
};

inline constexpr MappingVariant kAllVariants[] = {
    MappingVariant::kRayIlmDempster, MappingVariant::kDeepIrmAccumulated, MappingVariant::kDeepIrmReplace,
    MappingVariant::kDeepIrmDiscounted, MappingVariant::kRayIrmDempster, MappingVariant::kFusedIrm,
};

std::string_view variant_id(MappingVariant v);     // e.g. "fused_irm"
std::string_view variant_label(MappingVariant v);  // e.g. "deep IRM (disc.) + ray IRM"
MappingVariant variant_from_string(std::string_view id);

bool uses_lidar(MappingVariant v);
bool uses_radar_rays(MappingVariant v);
bool uses_deep(MappingVariant v);

struct PipelineConfig {
  FusionParams fusion;
  RayIlmParams ilm;
  RayIrmParams irm;
  SurrogateParams surrogate;
  // When set, epoch k reads its deep prediction from <dir>/<k, 6 digits>.evgr
  // instead of running the surrogate.
  std::filesystem::path prediction_dir;
  int threads = 1;
};

// Per-epoch sensor model outputs, already resampled into the map frame.
struct EpochProducts {
  int epoch = 0;
  Pose2D vehicle_in_world;
  std::optional<EvidenceGrid> ilm;
  std::optional<EvidenceGrid> irm;
  std::optional<EvidenceGrid> prediction;
};

// Runs the sensor models epoch by epoch over a recording.
class EpochSource {
 public:
  EpochSource(const Recording& recording, const PipelineConfig& config, bool need_ilm, bool need_irm,
              bool need_prediction);

  int epoch_count() const { return static_cast<int>(epochs_.size()); }
  EpochProducts produce(int epoch);

 private:
  const Recording& recording_;
  const PipelineConfig& config_;
  bool need_ilm_;
  bool need_irm_;
  bool need_prediction_;
  std::vector<Epoch> epochs_;
  std::deque<std::vector<Scan>> radar_history_;  // world-frame radar scans, newest last
};

// One map and its update rule.
class Mapper {
 public:
  Mapper(MappingVariant variant, const GridGeometry& map_geometry, const FusionParams& fusion, int threads = 1);

  MappingVariant variant() const { return variant_; }
  void step(const EpochProducts& products);
  const EvidenceGrid& map() const { return map_; }
  // Cells that ever received a non-vacuous ray IRM update.
  const std::vector<std::uint8_t>& irm_touched() const { return irm_touched_; }

 private:
  MappingVariant variant_;
  FusionParams fusion_;
  int threads_;
  EvidenceGrid map_;
  std::vector<std::uint8_t> irm_touched_;
};

using EpochObserver = std::function<void(int epoch, std::span<const Mapper> mappers)>;

// Steps all variants in lockstep. Throws ConfigError when a variant needs a
// sensor the recording lacks. The observer runs after every epoch.
std::vector<Mapper> run_variants(const Recording& recording, std::span<const MappingVariant> variants,
                                 const PipelineConfig& config, const EpochObserver& observer = {});

// Map after each epoch; empty for an empty recording.
std::vector<EvidenceGrid> run_variant(const Recording& recording, MappingVariant variant,
                                      const PipelineConfig& config);

}  // namespace evigrid

#endif  // EVIGRID_PIPELINE_HPP_
