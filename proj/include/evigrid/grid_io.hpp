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

#ifndef EVIGRID_GRID_IO_HPP_
#define EVIGRID_GRID_IO_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "evigrid/grid.hpp"

namespace evigrid {

// EVGR layout, all little-endian, 32-byte header:
//   0  char[4]  "EVGR"
//   4  uint32   width
//   8  uint32   height
//  12  uint16   plane count (3: m_f, m_o, m_u; 2: e_f, e_o)
//  14  uint16   reserved, 0
//  16  float32  resolution
//  20  float32  origin x
//  24  float32  origin y
//  28  uint32   reserved, 0
// followed by `plane count` row-major float32 planes of width * height.
inline constexpr std::size_t kEvgrHeaderSize = 32;

struct EvgrHeader {
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  std::uint16_t planes = 0;
  float resolution = 0.0f;
  float origin_x = 0.0f;
  float origin_y = 0.0f;
};

struct EvgrFile {
  EvgrHeader header;
  std::vector<std::vector<float>> planes;
};

std::vector<std::uint8_t> encode_grid(const EvidenceGrid& grid);
void write_grid(const EvidenceGrid& grid, const std::filesystem::path& path);

// Two-plane evidence file (e_f, e_o) with the same header.
void write_evidence_planes(const GridGeometry& geometry, const std::vector<float>& e_free,
                           const std::vector<float>& e_occupied,
                           const std::filesystem::path& path);

EvgrFile read_evgr(const std::filesystem::path& path);

// Reads a three-plane mass grid. Masses are float32 on disk: on load m_f and
// m_o are kept and m_u = 1 - m_f - m_o, so load(dump(g)) is a fixed point of
// dump/load. Throws IoError naming the offending field.
EvidenceGrid read_grid(const std::filesystem::path& path);
EvidenceGrid mass_grid_from(const EvgrFile& file, const std::filesystem::path& path);

}  // namespace evigrid

#endif  // EVIGRID_GRID_IO_HPP_
