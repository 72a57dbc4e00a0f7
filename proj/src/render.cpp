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

#include "evigrid/render.hpp"

#include <png.h>

#include <cmath>
#include <cstdio>
#include <memory>

#include "evigrid/errors.hpp"

namespace evigrid {

namespace {

std::uint8_t channel(double m) { return static_cast<std::uint8_t>(std::lround(255.0 * m)); }

}  // namespace

std::array<std::uint8_t, 3> cell_color(const MassFunction& m) {
  return {channel(m.f()), channel(m.o()), channel(m.u())};
}

std::vector<std::uint8_t> render_rgb(const EvidenceGrid& grid) {
  const int w = grid.width();
  const int h = grid.height();
  std::vector<std::uint8_t> rgb(static_cast<std::size_t>(w) * h * 3);
  for (int row = 0; row < h; ++row) {
    const int iy = h - 1 - row;
    for (int ix = 0; ix < w; ++ix) {
      const auto c = cell_color(grid.at(ix, iy));
      std::copy(c.begin(), c.end(), rgb.begin() + (static_cast<std::size_t>(row) * w + ix) * 3);
    }
  }
  return rgb;
}

void render_png(const EvidenceGrid& grid, const std::filesystem::path& path) {
  const std::vector<std::uint8_t> rgb = render_rgb(grid);
  std::unique_ptr<FILE, int (*)(FILE*)> fp(std::fopen(path.c_str(), "wb"), &std::fclose);
  if (!fp) throw IoError("cannot write '" + path.string() + "'");

  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    png_destroy_write_struct(&png, &info);
    throw IoError("libpng initialisation failed");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw IoError("PNG encoding failed for '" + path.string() + "'");
  }
  png_init_io(png, fp.get());
  png_set_IHDR(png, info, grid.width(), grid.height(), 8, PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  const std::size_t stride = static_cast<std::size_t>(grid.width()) * 3;
  for (int row = 0; row < grid.height(); ++row) {
    png_write_row(png, const_cast<png_bytep>(rgb.data() + row * stride));
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

}  // namespace evigrid
