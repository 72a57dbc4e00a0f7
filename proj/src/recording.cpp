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

#include "evigrid/recording.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "evigrid/errors.hpp"
#include "json_io.hpp"

namespace evigrid {

namespace {

using json_io::json;

constexpr const char* kCsvHeader =
    "timestamp,sensor_id,sensor_kind,pose_x,pose_y,pose_theta,point_x,point_y,point_z";

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

template <typename T>
bool parse_field(std::string_view s, T& out) {
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace

const SensorInfo& RecordingMeta::sensor(int id) const {
  for (const SensorInfo& s : sensors) {
    if (s.id == id) return s;
  }
  throw IoError("recording has no sensor with id " + std::to_string(id));
}

std::vector<Epoch> group_epochs(std::span<const Scan> scans) {
  std::vector<Epoch> epochs;
  for (const Scan& scan : scans) {
    if (epochs.empty() || epochs.back().timestamp != scan.timestamp) {
      epochs.push_back({scan.timestamp, {}});
    }
    epochs.back().scans.push_back(scan);
  }
  return epochs;
}

Pose2D vehicle_pose(const Scan& scan, const SensorInfo& sensor) {
  return scan.sensor_pose.compose(sensor.extrinsic.inverse());
}

std::string format_double(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) throw std::logic_error("to_chars failed");
  return std::string(buf, ptr);
}

void save_recording(const Recording& recording, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create '" + dir.string() + "': " + ec.message());

  const RecordingMeta& meta = recording.meta;
  json sensors = json::array();
  for (const SensorInfo& s : meta.sensors) {
    sensors.push_back(
        {{"id", s.id}, {"kind", std::string(to_string(s.kind))}, {"extrinsic", json_io::pose_to(s.extrinsic)}});
  }
  json doc = {{"format", "evigrid-recording/1"},
              {"grid", json_io::geometry_to(meta.grid)},
              {"map_grid", json_io::geometry_to(meta.map_grid)},
              {"map_in_world", json_io::pose_to(meta.map_in_world)},
              {"sensors", std::move(sensors)}};
  if (meta.world) doc["world"] = json_io::world_to(*meta.world);
  {
    std::ofstream os(dir / "meta.json", std::ios::trunc);
    if (!os) throw IoError("cannot write '" + (dir / "meta.json").string() + "'");
    os << doc.dump(2) << '\n';
  }

  const std::filesystem::path csv = dir / "scans.csv";
  std::ofstream os(csv, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot write '" + csv.string() + "'");
  std::string out = std::string(kCsvHeader) + "\n";
  for (const Scan& scan : recording.scans) {
    const std::string prefix = format_double(scan.timestamp) + "," + std::to_string(scan.sensor_id) + "," +
                               std::string(to_string(scan.kind)) + "," + format_double(scan.sensor_pose.x()) +
                               "," + format_double(scan.sensor_pose.y()) + "," +
                               format_double(scan.sensor_pose.theta()) + ",";
    if (scan.points.empty()) out += prefix + ",,\n";
    for (const Point3& p : scan.points) {
      out += prefix + format_double(p.x) + "," + format_double(p.y) + "," + format_double(p.z) + "\n";
    }
  }
  os << out;
  if (!os) throw IoError("write failed for '" + csv.string() + "'");
}

Recording load_recording(const std::filesystem::path& dir) {
  Recording rec;
  const std::filesystem::path meta_path = dir / "meta.json";
  std::ifstream meta_in(meta_path);
  if (!meta_in) throw IoError("cannot open '" + meta_path.string() + "'");
  json doc;
  try {
    doc = json::parse(meta_in);
    const std::string where = meta_path.string();
    rec.meta.grid = json_io::geometry_from(json_io::require(doc, "grid", where), "vehicle", where + ".grid");
    rec.meta.map_grid =
        json_io::geometry_from(json_io::require(doc, "map_grid", where), "map", where + ".map_grid");
    if (doc.contains("map_in_world")) {
      rec.meta.map_in_world = json_io::pose_from(doc.at("map_in_world"), where + ".map_in_world");
    }
    for (const json& s : json_io::require(doc, "sensors", where)) {
      SensorInfo info;
      info.id = json_io::get_int_or(s, "id", 0, where + ".sensors");
      info.kind = sensor_kind_from_string(json_io::require(s, "kind", where + ".sensors").get<std::string>());
      if (s.contains("extrinsic")) info.extrinsic = json_io::pose_from(s.at("extrinsic"), where + ".sensors");
      rec.meta.sensors.push_back(info);
    }
    if (doc.contains("world")) rec.meta.world = json_io::world_from(doc.at("world"), where + ".world");
  } catch (const json::exception& e) {
    throw IoError("'" + meta_path.string() + "': " + e.what());
  } catch (const std::invalid_argument& e) {
    throw IoError("'" + meta_path.string() + "': " + e.what());
  } catch (const ConfigError& e) {
    throw IoError(e.what());
  }

  const std::filesystem::path csv = dir / "scans.csv";
  std::ifstream in(csv, std::ios::binary);
  if (!in) throw IoError("cannot open '" + csv.string() + "'");
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw IoError("'" + csv.string() + "': missing or unexpected header");
  }
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto bad = [&](const std::string& what) {
      return IoError("'" + csv.string() + "' line " + std::to_string(line_no) + ": " + what);
    };
    const std::vector<std::string_view> f = split(line);
    if (f.size() != 9) throw bad("expected 9 fields");
    double t, px, py, pt;
    int id;
    if (!parse_field(f[0], t) || !parse_field(f[1], id) || !parse_field(f[3], px) || !parse_field(f[4], py) ||
        !parse_field(f[5], pt)) {
      throw bad("malformed scan fields");
    }
    SensorKind kind;
    try {
      kind = sensor_kind_from_string(f[2]);
    } catch (const std::invalid_argument& e) {
      throw bad(e.what());
    }
    if (rec.scans.empty() || rec.scans.back().timestamp != t || rec.scans.back().sensor_id != id) {
      if (!rec.scans.empty() && t < rec.scans.back().timestamp) throw bad("timestamps are not monotone");
      Scan scan;
      scan.timestamp = t;
      scan.sensor_id = id;
      scan.kind = kind;
      scan.sensor_pose = Pose2D(px, py, pt);
      rec.scans.push_back(std::move(scan));
    }
    if (f[6].empty() && f[7].empty() && f[8].empty()) continue;
    Point3 p;
    if (!parse_field(f[6], p.x) || !parse_field(f[7], p.y) || !parse_field(f[8], p.z)) {
      throw bad("malformed point");
    }
    rec.scans.back().points.push_back(p);
  }
  return rec;
}

}  // namespace evigrid
