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

#include "evigrid/deep_ism.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "evigrid/distance_transform.hpp"
#include "evigrid/errors.hpp"
#include "evigrid/grid_io.hpp"
#include "evigrid/parallel.hpp"

namespace evigrid {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Counter-based uniform draw in [0, 1); independent of iteration order.
double uniform_draw(std::uint64_t seed, std::uint64_t epoch, std::uint64_t cell) {
  const std::uint64_t h = splitmix64(splitmix64(splitmix64(seed) ^ epoch) ^ cell);
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

}  // namespace

std::string_view to_string(GammaMode mode) { return mode == GammaMode::kPaper ? "paper" : "exact"; }

GammaMode gamma_mode_from_string(std::string_view name) {
  if (name == "paper") return GammaMode::kPaper;
  if (name == "exact") return GammaMode::kExact;
  throw std::invalid_argument("unknown gamma mode '" + std::string(name) + "'");
}

void FusionParams::validate() const {
  if (!(unknown_floor > 0.0 && unknown_floor < 1.0)) {
    throw std::invalid_argument("unknown_floor must lie in (0, 1)");
  }
  if (!(tanh_gain > 0.0)) throw std::invalid_argument("tanh_gain must be positive");
  if (accumulation_window < 1) throw std::invalid_argument("accumulation_window must be >= 1");
}

void SurrogateParams::validate() const {
  if (!(certainty_cap > 0.0 && certainty_cap <= 1.0)) {
    throw std::invalid_argument("certainty_cap must lie in (0, 1]");
  }
  if (!(decay_length > 0.0)) throw std::invalid_argument("decay_length must be positive");
  if (!(occupied_bias >= 0.0 && occupied_bias < 1.0)) {
    throw std::invalid_argument("occupied_bias must lie in [0, 1)");
  }
  if (!(support_radius >= 0.0)) throw std::invalid_argument("support_radius must be >= 0");
  if (!(outlier_rate >= 0.0 && outlier_rate <= 1.0)) {
    throw std::invalid_argument("outlier_rate must lie in [0, 1]");
  }
}

double delta_unknown(const MassFunction& map_cell, const MassFunction& prediction_cell) {
  return map_cell.u() - prediction_cell.u();
}

double compute_gamma(const MassFunction& map_cell, const MassFunction& limited_prediction,
                     const FusionParams& params) {
  const double map_u = map_cell.u();
  const double pred_u = limited_prediction.u();
  if (map_u <= pred_u) return 0.0;
  const double tanh_term = std::tanh(params.tanh_gain * (map_u - pred_u));
  const double k = conflict(map_cell, limited_prediction);
  const double floor = params.unknown_floor;

  double bound = 1.0;
  if (params.gamma_mode == GammaMode::kExact) {
    const double denom = map_u * (1.0 - pred_u) - k;
    if (denom > 0.0) bound = (map_u - floor) / denom;
  } else {
    const double denom = map_u * (1.0 - pred_u);
    if (denom <= 0.0) return std::clamp(tanh_term, 0.0, 1.0);
    bound = (map_u + k - floor) / denom;
  }
  return std::clamp(std::min(bound, tanh_term), 0.0, 1.0);
}

// Shortfalls below this are floating point noise, not a violated bound.
constexpr double kFloorRoundingSlack = 1e-12;

MassFunction integrate_prediction(const MassFunction& map_cell, const MassFunction& raw_prediction,
                                  const FusionParams& params) {
  const MassFunction limited = limit_unknown(raw_prediction, params.unknown_floor);
  const double gamma = compute_gamma(map_cell, limited, params);
  if (gamma == 0.0) return map_cell;
  const MassFunction fused = yager_combine(map_cell, discount(gamma, limited));
  // At the floor fixpoint the product terms can land an ulp below the floor.
  // Snap those back so "below floor" keeps meaning "ray verified".
  const double floor = params.unknown_floor;
  if (map_cell.u() >= floor && fused.u() < floor && floor - fused.u() < kFloorRoundingSlack) {
    return limit_unknown(fused, floor);
  }
  return fused;
}

void integrate_prediction_grid(EvidenceGrid& map, const EvidenceGrid& prediction,
                               const FusionParams& params, int threads) {
  if (!map.geometry().same_layout(prediction.geometry())) {
    throw std::invalid_argument("integrate_prediction_grid: geometry mismatch");
  }
  const std::size_t width = static_cast<std::size_t>(map.width());
  parallel_rows(map.height(), threads, [&](int begin, int end) {
    for (std::size_t i = begin * width; i < end * width; ++i) {
      if (prediction[i].is_vacuous()) continue;
      map[i] = integrate_prediction(map[i], prediction[i], params);
    }
  });
}

EvidenceGrid surrogate_predict(std::span<const Scan> scans, const World& world,
                               const Pose2D& frame_in_world, const SurrogateParams& params,
                               const GridGeometry& geometry, std::uint64_t epoch) {
  params.validate();
  DetectionImage detections(geometry);
  for (const Scan& scan : scans) rasterize_into(scan, detections);
  std::vector<std::uint8_t> seeds(detections.counts.size());
  std::transform(detections.counts.begin(), detections.counts.end(), seeds.begin(),
                 [](std::uint32_t c) { return static_cast<std::uint8_t>(c > 0); });
  const std::vector<double> sq_dist = squared_distance_transform(seeds, geometry.width, geometry.height);

  const double bias = params.occupied_bias;
  const MassFunction unsupported = MassFunction::unchecked(0.0, bias, 1.0 - bias);
  const double support_cells = params.support_radius / geometry.resolution;
  const double support_sq = support_cells * support_cells;

  EvidenceGrid grid(geometry);
  for (int iy = 0; iy < geometry.height; ++iy) {
    for (int ix = 0; ix < geometry.width; ++ix) {
      const std::size_t i = geometry.index(ix, iy);
      if (!(sq_dist[i] <= support_sq)) {
        grid[i] = unsupported;
        continue;
      }
      bool occupied = world.occupied_at(frame_in_world.apply(geometry.center(ix, iy)));
      double committed =
          params.certainty_cap * std::exp(-std::sqrt(sq_dist[i]) * geometry.resolution / params.decay_length);
      if (params.outlier_rate > 0.0 && uniform_draw(params.rng_seed, epoch, i) < params.outlier_rate) {
        occupied = !occupied;
        committed = params.certainty_cap;
      }
      grid[i] = occupied ? MassFunction::unchecked(0.0, committed, 1.0 - committed)
                         : MassFunction::unchecked(committed * (1.0 - bias), committed * bias,
                                                   1.0 - committed);
    }
  }
  return grid;
}

EvidenceGrid load_prediction(const std::filesystem::path& path, const GridGeometry& geometry) {
  const EvgrFile file = read_evgr(path);
  const std::string where = "'" + path.string() + "': ";
  const EvgrHeader& h = file.header;
  if (h.width != static_cast<std::uint32_t>(geometry.width)) throw IoError(where + "width mismatch");
  if (h.height != static_cast<std::uint32_t>(geometry.height)) throw IoError(where + "height mismatch");
  if (h.resolution != static_cast<float>(geometry.resolution)) throw IoError(where + "resolution mismatch");
  if (h.origin_x != static_cast<float>(geometry.origin_x) ||
      h.origin_y != static_cast<float>(geometry.origin_y)) {
    throw IoError(where + "origin mismatch");
  }

  EvidenceGrid grid(geometry);
  if (h.planes == 3) {
    const EvidenceGrid masses = mass_grid_from(file, path);
    std::copy(masses.cells().begin(), masses.cells().end(), grid.cells().begin());
    return grid;
  }
  for (std::size_t i = 0; i < geometry.cell_count(); ++i) {
    const double e_f = file.planes[0][i];
    const double e_o = file.planes[1][i];
    if (!(e_f >= 0.0) || !(e_o >= 0.0) || !std::isfinite(e_f) || !std::isfinite(e_o)) {
      throw IoError(where + "cell " + std::to_string(i) + " has invalid evidence");
    }
    grid[i] = opinion_to_mass(SubjectiveOpinion(e_f, e_o));
  }
  return grid;
}

}  // namespace evigrid
