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

#include "evigrid/distance_transform.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace evigrid {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double sq(int x) { return static_cast<double>(x) * x; }

// 1D squared distance transform of a sampled function f.
void transform_1d(std::span<const double> f, std::span<double> d, std::vector<int>& v,
                  std::vector<double>& z) {
  const int n = static_cast<int>(f.size());
  int k = -1;
  for (int q = 0; q < n; ++q) {
    if (f[q] == kInf) continue;
    while (k >= 0) {
      const int p = v[k];
      const double s = ((f[q] + sq(q)) - (f[p] + sq(p))) / (2.0 * (q - p));
      if (s > z[k]) break;
      --k;
    }
    ++k;
    v[k] = q;
    z[k] = k == 0 ? -kInf
                  : ((f[q] + sq(q)) - (f[v[k - 1]] + sq(v[k - 1]))) / (2.0 * (q - v[k - 1]));
    z[k + 1] = kInf;
  }
  if (k < 0) {
    for (int q = 0; q < n; ++q) d[q] = kInf;
    return;
  }
  int j = 0;
  for (int q = 0; q < n; ++q) {
    while (z[j + 1] < q) ++j;
    const double dq = q - v[j];
    d[q] = dq * dq + f[v[j]];
  }
}

}  // namespace

std::vector<double> squared_distance_transform(std::span<const std::uint8_t> seeds, int width,
                                               int height) {
  if (width < 0 || height < 0 ||
      seeds.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
    throw std::invalid_argument("distance transform: seed size mismatch");
  }
  std::vector<double> out(seeds.size());
  for (std::size_t i = 0; i < seeds.size(); ++i) out[i] = seeds[i] ? 0.0 : kInf;

  const int longest = std::max(width, height);
  std::vector<double> f(longest), d(longest), z(longest + 1);
  std::vector<int> v(longest);

  for (int x = 0; x < width; ++x) {
    for (int y = 0; y < height; ++y) f[y] = out[static_cast<std::size_t>(y) * width + x];
    transform_1d({f.data(), static_cast<std::size_t>(height)}, {d.data(), static_cast<std::size_t>(height)}, v, z);
    for (int y = 0; y < height; ++y) out[static_cast<std::size_t>(y) * width + x] = d[y];
  }
  for (int y = 0; y < height; ++y) {
    const std::size_t row = static_cast<std::size_t>(y) * width;
    for (int x = 0; x < width; ++x) f[x] = out[row + x];
    transform_1d({f.data(), static_cast<std::size_t>(width)}, {d.data(), static_cast<std::size_t>(width)}, v, z);
    for (int x = 0; x < width; ++x) out[row + x] = d[x];
  }
  return out;
}

}  // namespace evigrid
