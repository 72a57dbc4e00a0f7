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

#include <cstdint>
#include <fstream>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"
#include "evigrid/distance_transform.hpp"
#include "evigrid/errors.hpp"
#include "evigrid/grid.hpp"
#include "evigrid/grid_io.hpp"
#include "test_support.hpp"

namespace evigrid {
namespace {

using testing::random_mass;
using testing::ScratchDir;

EvidenceGrid random_grid(const GridGeometry& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  EvidenceGrid grid(g);
  for (auto& c : grid.cells()) c = random_mass(rng);
  return grid;
}

TEST_CASE("pose algebra") {
  const Pose2D p(1.0, -2.0, 3.0 * std::numbers::pi);
  CHECK(p.theta() == doctest::Approx(std::numbers::pi));
  CHECK(Pose2D(0, 0, -std::numbers::pi).theta() == doctest::Approx(std::numbers::pi));
  const Pose2D q(0.3, 0.7, -1.1);
  const Pose2D round = p.compose(q).compose(q.inverse());
  CHECK(round.x() == doctest::Approx(p.x()).epsilon(1e-12));
  CHECK(round.y() == doctest::Approx(p.y()).epsilon(1e-12));
  const Point2 a = p.inverse().apply(p.apply({4.0, 5.0}));
  CHECK(a.x == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(a.y == doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("grid defaults and geometry") {
  const GridGeometry g = GridGeometry::bird_eye_default();
  CHECK(g.width == 512);
  CHECK(g.resolution == 0.078125);
  CHECK(g.origin_x == -20.0);
  const EvidenceGrid grid(g);
  CHECK(grid.cells().size() == g.cell_count());
  for (const auto& c : grid.cells()) REQUIRE(c.is_vacuous());
  CHECK_THROWS_AS(EvidenceGrid(GridGeometry{4, 4, 0.0, 0, 0, {}}), std::invalid_argument);
  CHECK_FALSE(g.cell_of({20.0, 0.0}).has_value());
  CHECK(g.cell_of({-20.0, -20.0}) == CellIndex{0, 0});
}

TEST_CASE("transform_grid identity and vacuous preservation") {
  const GridGeometry g = GridGeometry::centered(40, 30, 0.5);
  const EvidenceGrid src = random_grid(g, 1);
  CHECK(transform_grid(src, Pose2D(), g) == src);
  const EvidenceGrid vac(g);
  CHECK(transform_grid(vac, Pose2D(1.3, -0.2, 0.7), g) == vac);
  CHECK_THROWS_AS(transform_grid(src, Pose2D(), GridGeometry{4, 4, 0.0, 0, 0, {}}), std::invalid_argument);
}

TEST_CASE("transform_grid integer shift") {
  const GridGeometry g = GridGeometry::centered(20, 16, 0.25);
  const EvidenceGrid src = random_grid(g, 2);
  const int kx = 3, ky = -2;
  const EvidenceGrid dst = transform_grid(src, Pose2D(kx * 0.25, ky * 0.25, 0.0), g);
  for (int iy = 0; iy < g.height; ++iy) {
    for (int ix = 0; ix < g.width; ++ix) {
      const int sx = ix - kx, sy = iy - ky;
      const MassFunction expected = g.contains(sx, sy) ? src.at(sx, sy) : MassFunction::vacuous();
      REQUIRE(dst.at(ix, iy) == expected);
    }
  }
  // Round trip is exact wherever the shifted cell stayed inside.
  const EvidenceGrid back = transform_grid(dst, Pose2D(-kx * 0.25, -ky * 0.25, 0.0), g);
  for (int iy = 0; iy < g.height; ++iy) {
    for (int ix = 0; ix < g.width; ++ix) {
      if (g.contains(ix + kx, iy + ky)) REQUIRE(back.at(ix, iy) == src.at(ix, iy));
    }
  }
}

TEST_CASE("transform_grid quarter turn equals index permutation") {
  const int n = 24;
  const GridGeometry g = GridGeometry::centered(n, n, 0.5);
  const EvidenceGrid src = random_grid(g, 3);
  const EvidenceGrid dst = transform_grid(src, Pose2D(0, 0, std::numbers::pi / 2), g, 3);
  // Rotating content by +90 degrees: dst(ix, iy) = src(iy, n - 1 - ix).
  for (int iy = 0; iy < n; ++iy) {
    for (int ix = 0; ix < n; ++ix) REQUIRE(dst.at(ix, iy) == src.at(iy, n - 1 - ix));
  }
}

TEST_CASE("transform_grid is independent of the thread count") {
  const GridGeometry g = GridGeometry::centered(64, 48, 0.2);
  const EvidenceGrid src = random_grid(g, 4);
  const Pose2D p(0.37, -1.2, 0.41);
  CHECK(transform_grid(src, p, g, 1) == transform_grid(src, p, g, 7));
}

TEST_CASE("fuse_cell") {
  const MassFunction m(0.5, 0.2, 0.3);
  CHECK(fuse_cell(m, MassFunction::vacuous(), FusionRule::kDempster) == m);
  CHECK(fuse_cell(m, MassFunction::vacuous(), FusionRule::kYager) == m);
  CHECK(testing::near(fuse_cell(m, MassFunction(0.3, 0.1, 0.6), FusionRule::kYager), 0.54, 0.17, 0.29, 1e-12));
  const MassFunction free(1, 0, 0);
  CHECK(fuse_cell(free, MassFunction(0, 1, 0), FusionRule::kDempster) == free);

  std::mt19937_64 rng(5);
  int failures = 0;
  for (int i = 0; i < 100000; ++i) {
    const MassFunction a = random_mass(rng), b = random_mass(rng);
    if (!testing::valid(fuse_cell(a, b, FusionRule::kDempster))) ++failures;
    if (!testing::valid(fuse_cell(a, b, FusionRule::kYager))) ++failures;
  }
  CHECK(failures == 0);
}

TEST_CASE("fuse_grid rejects mismatched layouts") {
  EvidenceGrid a(GridGeometry::centered(4, 4, 1.0));
  const EvidenceGrid b(GridGeometry::centered(5, 4, 1.0));
  CHECK_THROWS_AS(fuse_grid(a, b, FusionRule::kYager), std::invalid_argument);
}

TEST_CASE("rasterize") {
  const GridGeometry g = GridGeometry::centered(10, 10, 1.0);
  Scan scan;
  CHECK(rasterize(scan, g).total() == 0);
  scan.points.push_back({0.1, 0.1, 1.0});
  DetectionImage one = rasterize(scan, g);
  CHECK(one.total() == 1);
  CHECK(one.occupied(5, 5));
  scan.points.push_back({0.7, 0.9, 1.0});
  scan.points.push_back({50.0, 0.0, 1.0});
  DetectionImage two = rasterize(scan, g);
  CHECK(two.counts[g.index(5, 5)] == 2);
  CHECK(two.total() == 2);
}

TEST_CASE("distance transform matches brute force") {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 50; ++trial) {
    const int w = 1 + static_cast<int>(rng() % 23), h = 1 + static_cast<int>(rng() % 17);
    std::vector<std::uint8_t> seeds(static_cast<std::size_t>(w * h), 0);
    for (auto& s : seeds) s = (rng() % 13 == 0) ? 1 : 0;
    const std::vector<double> d = squared_distance_transform(seeds, w, h);
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        double best = std::numeric_limits<double>::infinity();
        for (int sy = 0; sy < h; ++sy) {
          for (int sx = 0; sx < w; ++sx) {
            if (seeds[static_cast<std::size_t>(sy * w + sx)]) {
              best = std::min(best, static_cast<double>((x - sx) * (x - sx) + (y - sy) * (y - sy)));
            }
          }
        }
        REQUIRE(d[static_cast<std::size_t>(y * w + x)] == best);
      }
    }
  }
}

TEST_CASE("EVGR round trip is a fixed point") {
  ScratchDir dir("grid_io");
  const GridGeometry g{7, 5, 0.25, -1.0, 2.0, {}};
  const EvidenceGrid src = random_grid(g, 7);
  write_grid(src, dir.path() / "a.evgr");
  const EvidenceGrid once = read_grid(dir.path() / "a.evgr");
  CHECK(once.geometry().same_layout(g));
  for (std::size_t i = 0; i < g.cell_count(); ++i) {
    CHECK(std::abs(once[i].f() - src[i].f()) < 1e-7);
    CHECK(std::abs(once[i].o() - src[i].o()) < 1e-7);
  }
  write_grid(once, dir.path() / "b.evgr");
  CHECK(read_grid(dir.path() / "b.evgr") == once);
  write_grid(read_grid(dir.path() / "b.evgr"), dir.path() / "c.evgr");
  CHECK(testing::slurp(dir.path() / "b.evgr") == testing::slurp(dir.path() / "c.evgr"));

  const auto bytes = encode_grid(src);
  CHECK(bytes.size() == kEvgrHeaderSize + 3 * 4 * g.cell_count());
  CHECK(std::string(bytes.begin(), bytes.begin() + 4) == "EVGR");
}

TEST_CASE("EVGR errors name the problem") {
  ScratchDir dir("grid_io_err");
  CHECK_THROWS_AS(read_grid(dir.path() / "missing.evgr"), IoError);
  {
    std::ofstream(dir.path() / "bad.evgr", std::ios::binary) << "NOPE and some bytes to fill a header....";
  }
  CHECK_THROWS_WITH_AS(read_grid(dir.path() / "bad.evgr"), doctest::Contains("magic"), IoError);
  const auto bytes = encode_grid(EvidenceGrid(GridGeometry::centered(3, 3, 1.0)));
  {
    std::ofstream out(dir.path() / "short.evgr", std::ios::binary);
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size() - 4));
  }
  CHECK_THROWS_AS(read_grid(dir.path() / "short.evgr"), IoError);
}

}  // namespace
}  // namespace evigrid
