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

#include "evigrid/grid_io.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>

#include "evigrid/errors.hpp"

namespace evigrid {

namespace {

constexpr char kMagic[4] = {'E', 'V', 'G', 'R'};

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}
void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}
void put_f32(std::vector<std::uint8_t>& out, float v) { put_u32(out, std::bit_cast<std::uint32_t>(v)); }

std::uint32_t get_u32(const std::uint8_t* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}
std::uint16_t get_u16(const std::uint8_t* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}
float get_f32(const std::uint8_t* p) { return std::bit_cast<float>(get_u32(p)); }

std::vector<std::uint8_t> encode(const GridGeometry& g, const std::vector<const std::vector<float>*>& planes) {
  std::vector<std::uint8_t> out;
  out.reserve(kEvgrHeaderSize + planes.size() * g.cell_count() * 4);
  out.insert(out.end(), std::begin(kMagic), std::end(kMagic));
  put_u32(out, static_cast<std::uint32_t>(g.width));
  put_u32(out, static_cast<std::uint32_t>(g.height));
  put_u16(out, static_cast<std::uint16_t>(planes.size()));
  put_u16(out, 0);
  put_f32(out, static_cast<float>(g.resolution));
  put_f32(out, static_cast<float>(g.origin_x));
  put_f32(out, static_cast<float>(g.origin_y));
  put_u32(out, 0);
  for (const auto* plane : planes) {
    for (float v : *plane) put_f32(out, v);
  }
  return out;
}

void write_bytes(const std::vector<std::uint8_t>& bytes, const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot open '" + path.string() + "' for writing");
  os.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!os) throw IoError("write failed for '" + path.string() + "'");
}

}  // namespace

std::vector<std::uint8_t> encode_grid(const EvidenceGrid& grid) {
  const std::size_t n = grid.geometry().cell_count();
  std::vector<float> f(n), o(n), u(n);
  for (std::size_t i = 0; i < n; ++i) {
    f[i] = static_cast<float>(grid[i].f());
    o[i] = static_cast<float>(grid[i].o());
    u[i] = static_cast<float>(grid[i].u());
  }
  return encode(grid.geometry(), {&f, &o, &u});
}

void write_grid(const EvidenceGrid& grid, const std::filesystem::path& path) {
  write_bytes(encode_grid(grid), path);
}

void write_evidence_planes(const GridGeometry& geometry, const std::vector<float>& e_free,
                           const std::vector<float>& e_occupied,
                           const std::filesystem::path& path) {
  if (e_free.size() != geometry.cell_count() || e_occupied.size() != geometry.cell_count()) {
    throw std::invalid_argument("evidence plane size does not match geometry");
  }
  write_bytes(encode(geometry, {&e_free, &e_occupied}), path);
}

EvgrFile read_evgr(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open '" + path.string() + "'");
  const std::vector<std::uint8_t> bytes{std::istreambuf_iterator<char>(is), {}};
  const std::string where = "'" + path.string() + "': ";
  if (bytes.size() < kEvgrHeaderSize) throw IoError(where + "header truncated");
  if (std::memcmp(bytes.data(), kMagic, 4) != 0) throw IoError(where + "bad magic");

  EvgrFile file;
  EvgrHeader& h = file.header;
  h.width = get_u32(bytes.data() + 4);
  h.height = get_u32(bytes.data() + 8);
  h.planes = get_u16(bytes.data() + 12);
  h.resolution = get_f32(bytes.data() + 16);
  h.origin_x = get_f32(bytes.data() + 20);
  h.origin_y = get_f32(bytes.data() + 24);
  if (h.width == 0 || h.width > (1u << 16)) throw IoError(where + "invalid width");
  if (h.height == 0 || h.height > (1u << 16)) throw IoError(where + "invalid height");
  if (h.planes != 2 && h.planes != 3) throw IoError(where + "invalid plane count");
  if (!(h.resolution > 0.0f) || !std::isfinite(h.resolution)) {
    throw IoError(where + "invalid resolution");
  }
  const std::size_t cells = static_cast<std::size_t>(h.width) * h.height;
  if (bytes.size() != kEvgrHeaderSize + cells * 4 * h.planes) {
    throw IoError(where + "payload size does not match width x height x planes");
  }
  file.planes.assign(h.planes, std::vector<float>(cells));
  const std::uint8_t* p = bytes.data() + kEvgrHeaderSize;
  for (auto& plane : file.planes) {
    for (float& v : plane) {
      v = get_f32(p);
      p += 4;
    }
  }
  return file;
}

EvidenceGrid read_grid(const std::filesystem::path& path) { return mass_grid_from(read_evgr(path), path); }

EvidenceGrid mass_grid_from(const EvgrFile& file, const std::filesystem::path& path) {
  const std::string where = "'" + path.string() + "': ";
  if (file.header.planes != 3) throw IoError(where + "expected 3 mass planes");
  GridGeometry g{static_cast<int>(file.header.width), static_cast<int>(file.header.height),
                 file.header.resolution, file.header.origin_x, file.header.origin_y, {}};
  EvidenceGrid grid(g);
  for (std::size_t i = 0; i < g.cell_count(); ++i) {
    const double f = file.planes[0][i];
    const double o = file.planes[1][i];
    const double u = file.planes[2][i];
    const auto valid = [](double x) { return x >= 0.0 && x <= 1.0; };
    if (!valid(f) || !valid(o) || !valid(u) ||
        std::abs(f + o + u - 1.0) > MassFunction::kSumTolerance) {
      throw IoError(where + "cell " + std::to_string(i) + " is not a valid mass function");
    }
    const double committed = f + o;
    grid[i] = committed <= 1.0 ? MassFunction::unchecked(f, o, 1.0 - committed)
                               : MassFunction::unchecked(f / committed, o / committed, 0.0);
  }
  return grid;
}

}  // namespace evigrid
