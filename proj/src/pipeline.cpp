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

#include "evigrid/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

#include "evigrid/errors.hpp"
#include "evigrid/parallel.hpp"

namespace evigrid {

namespace {

struct VariantNames {
  MappingVariant variant;
  std::string_view id;
  std::string_view label;
};

constexpr VariantNames kNames[] = {
    {MappingVariant::kRayIlmDempster, "ray_ilm_dempster", "ray ILM (Dempster)"},
    {MappingVariant::kDeepIrmAccumulated, "deep_irm_accumulated", "deep IRM (accumulated)"},
    {MappingVariant::kDeepIrmReplace, "deep_irm_replace", "deep IRM (replacement)"},
    {MappingVariant::kDeepIrmDiscounted, "deep_irm_discounted", "deep IRM (discounted)"},
    {MappingVariant::kRayIrmDempster, "ray_irm_dempster", "ray IRM (Dempster)"},
    {MappingVariant::kFusedIrm, "fused_irm", "deep IRM (disc.) + ray IRM"},
};

const VariantNames& names(MappingVariant v) {
  for (const VariantNames& n : kNames) {
    if (n.variant == v) return n;
  }
  throw std::logic_error("unknown mapping variant");
}

// Detections dominate: a cell occupied in any grid stays occupied.
void merge_ilm(EvidenceGrid& into, const EvidenceGrid& other) {
  for (std::size_t i = 0; i < into.cells().size(); ++i) {
    const MassFunction& a = into[i];
    const MassFunction& b = other[i];
    const double o = std::max(a.o(), b.o());
    const double f = o > 0.0 ? 0.0 : std::max(a.f(), b.f());
    into[i] = MassFunction::unchecked(f, o, 1.0 - f - o);
  }
}

std::vector<Scan> in_frame(const std::deque<std::vector<Scan>>& history, std::size_t depth, const Pose2D& frame) {
  std::vector<Scan> out;
  const std::size_t first = history.size() > depth ? history.size() - depth : 0;
  for (std::size_t k = first; k < history.size(); ++k) {
    for (const Scan& s : history[k]) out.push_back(expressed_in(s, frame));
  }
  return out;
}

}  // namespace

std::string_view variant_id(MappingVariant v) { return names(v).id; }
std::string_view variant_label(MappingVariant v) { return names(v).label; }

MappingVariant variant_from_string(std::string_view id) {
  for (const VariantNames& n : kNames) {
    if (n.id == id) return n.variant;
  }
  throw std::invalid_argument("unknown variant '" + std::string(id) + "'");
}

bool uses_lidar(MappingVariant v) { return v == MappingVariant::kRayIlmDempster; }
bool uses_radar_rays(MappingVariant v) {
  return v == MappingVariant::kRayIrmDempster || v == MappingVariant::kFusedIrm;
}
bool uses_deep(MappingVariant v) {
  return v == MappingVariant::kDeepIrmAccumulated || v == MappingVariant::kDeepIrmReplace ||
         v == MappingVariant::kDeepIrmDiscounted || v == MappingVariant::kFusedIrm;
}

EpochSource::EpochSource(const Recording& recording, const PipelineConfig& config, bool need_ilm, bool need_irm,
                         bool need_prediction)
    : recording_(recording),
      config_(config),
      need_ilm_(need_ilm),
      need_irm_(need_irm),
      need_prediction_(need_prediction),
      epochs_(group_epochs(recording.scans)) {
  if (need_prediction && config.prediction_dir.empty() && !recording.meta.world && !epochs_.empty()) {
    throw ConfigError("the surrogate deep ISM needs the recording's world description");
  }
}

EpochProducts EpochSource::produce(int epoch) {
  const Epoch& e = epochs_.at(epoch);
  const RecordingMeta& meta = recording_.meta;
  EpochProducts out;
  out.epoch = epoch;
  out.vehicle_in_world = vehicle_pose(e.scans.front(), meta.sensor(e.scans.front().sensor_id));
  const Pose2D& vehicle = out.vehicle_in_world;
  const Pose2D vehicle_in_map = meta.map_in_world.inverse().compose(vehicle);
  const int threads = config_.threads;

  std::vector<Scan> radar;
  for (const Scan& s : e.scans) {
    if (s.kind == SensorKind::kRadar) radar.push_back(s);
  }
  const std::size_t depth = static_cast<std::size_t>(
      std::max(config_.irm.history_depth, config_.fusion.accumulation_window));
  radar_history_.push_back(std::move(radar));
  while (radar_history_.size() > depth) radar_history_.pop_front();

  if (need_ilm_) {
    std::optional<EvidenceGrid> ilm;
    for (const Scan& s : e.scans) {
      if (s.kind != SensorKind::kLidar) continue;
      EvidenceGrid g = ray_ilm(expressed_in(s, vehicle), config_.ilm, meta.grid);
      if (ilm) {
        merge_ilm(*ilm, g);
      } else {
        ilm = std::move(g);
      }
    }
    if (ilm) out.ilm = transform_grid(*ilm, vehicle_in_map, meta.map_grid, threads);
  }
  if (need_irm_) {
    const std::vector<Scan> scans =
        in_frame(radar_history_, static_cast<std::size_t>(config_.irm.history_depth), vehicle);
    out.irm = transform_grid(ray_irm(scans, config_.irm, meta.grid), vehicle_in_map, meta.map_grid, threads);
  }
  if (need_prediction_) {
    EvidenceGrid prediction;
    if (!config_.prediction_dir.empty()) {
      char name[32];
      std::snprintf(name, sizeof(name), "%06d.evgr", epoch);
      prediction = load_prediction(config_.prediction_dir / name, meta.grid);
    } else {
      const std::vector<Scan> scans =
          in_frame(radar_history_, static_cast<std::size_t>(config_.fusion.accumulation_window), vehicle);
      prediction = surrogate_predict(scans, *meta.world, vehicle, config_.surrogate, meta.grid,
                                     static_cast<std::uint64_t>(epoch));
    }
    out.prediction = transform_grid(prediction, vehicle_in_map, meta.map_grid, threads);
  }
  return out;
}

Mapper::Mapper(MappingVariant variant, const GridGeometry& map_geometry, const FusionParams& fusion, int threads)
    : variant_(variant), fusion_(fusion), threads_(threads), map_(map_geometry) {
  if (uses_radar_rays(variant)) irm_touched_.assign(map_geometry.cell_count(), 0);
}

void Mapper::step(const EpochProducts& p) {
  const std::size_t width = static_cast<std::size_t>(map_.width());
  switch (variant_) {
    case MappingVariant::kRayIlmDempster:
      if (p.ilm) fuse_grid(map_, *p.ilm, FusionRule::kDempster, threads_);
      break;
    case MappingVariant::kDeepIrmAccumulated:
      fuse_grid(map_, p.prediction.value(), FusionRule::kDempster, threads_);
      break;
    case MappingVariant::kDeepIrmReplace: {
      const EvidenceGrid& pred = p.prediction.value();
      parallel_rows(map_.height(), threads_, [&](int begin, int end) {
        for (std::size_t i = begin * width; i < end * width; ++i) {
          if (pred[i].u() < map_[i].u()) map_[i] = limit_unknown(pred[i], fusion_.unknown_floor);
        }
      });
      break;
    }
    case MappingVariant::kDeepIrmDiscounted:
      integrate_prediction_grid(map_, p.prediction.value(), fusion_, threads_);
      break;
    case MappingVariant::kFusedIrm:
      integrate_prediction_grid(map_, p.prediction.value(), fusion_, threads_);
      [[fallthrough]];
    case MappingVariant::kRayIrmDempster: {
      const EvidenceGrid& irm = p.irm.value();
      fuse_grid(map_, irm, FusionRule::kDempster, threads_);
      for (std::size_t i = 0; i < irm.cells().size(); ++i) {
        if (!irm[i].is_vacuous()) irm_touched_[i] = 1;
      }
      break;
    }
  }
}

std::vector<Mapper> run_variants(const Recording& recording, std::span<const MappingVariant> variants,
                                 const PipelineConfig& config, const EpochObserver& observer) {
  config.fusion.validate();
  config.ilm.validate();
  config.irm.validate();
  config.surrogate.validate();
  bool need_ilm = false, need_irm = false, need_prediction = false;
  for (MappingVariant v : variants) {
    need_ilm |= uses_lidar(v);
    need_irm |= uses_radar_rays(v);
    need_prediction |= uses_deep(v);
  }
  const auto has_kind = [&](SensorKind kind) {
    return std::any_of(recording.scans.begin(), recording.scans.end(),
                       [kind](const Scan& s) { return s.kind == kind; });
  };
  if (!recording.scans.empty()) {
    if (need_ilm && !has_kind(SensorKind::kLidar)) throw ConfigError("lidar variant requested but the recording has no lidar scans");
    if ((need_irm || need_prediction) && !has_kind(SensorKind::kRadar)) {
      throw ConfigError("radar variant requested but the recording has no radar scans");
    }
  }

  std::vector<Mapper> mappers;
  for (MappingVariant v : variants) mappers.emplace_back(v, recording.meta.map_grid, config.fusion, config.threads);
  EpochSource source(recording, config, need_ilm, need_irm, need_prediction);
  for (int k = 0; k < source.epoch_count(); ++k) {
    const EpochProducts products = source.produce(k);
    for (Mapper& m : mappers) m.step(products);
    if (observer) observer(k, mappers);
  }
  return mappers;
}

std::vector<EvidenceGrid> run_variant(const Recording& recording, MappingVariant variant,
                                      const PipelineConfig& config) {
  std::vector<EvidenceGrid> sequence;
  const MappingVariant variants[] = {variant};
  run_variants(recording, variants, config,
               [&](int, std::span<const Mapper> mappers) { sequence.push_back(mappers.front().map()); });
  return sequence;
}

}  // namespace evigrid
