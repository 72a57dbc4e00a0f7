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

#include "evigrid/eval.hpp"

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "evigrid/errors.hpp"
#include "evigrid/recording.hpp"
#include "json.hpp"

namespace evigrid {

namespace {

using nlohmann::json;

double iou(std::size_t intersection, std::size_t uni) {
  return uni == 0 ? 100.0 : 100.0 * static_cast<double>(intersection) / static_cast<double>(uni);
}

json iou_to(const ClassIou& c) { return {{"free", c.free}, {"occupied", c.occupied}, {"unknown", c.unknown}}; }

ClassIou iou_from(const json& j) {
  ClassIou c{j.at("free").get<double>(), j.at("occupied").get<double>(), j.at("unknown").get<double>()};
  for (double v : {c.free, c.occupied, c.unknown}) {
    if (!(v >= 0.0 && v <= 100.0)) throw ConfigError("IoU value outside [0, 100]");
  }
  return c;
}

}  // namespace

CellClass classify(const MassFunction& m) {
  if (m.f() > m.o() && m.f() > m.u()) return CellClass::kFree;
  if (m.o() > m.f() && m.o() > m.u()) return CellClass::kOccupied;
  return CellClass::kUnknown;
}

ClassIou evaluate(const EvidenceGrid& map, const EvidenceGrid& reference) {
  if (!map.geometry().same_layout(reference.geometry())) {
    throw std::invalid_argument("evaluate: map and reference geometries differ");
  }
  std::array<std::size_t, 3> inter{}, uni{};
  for (std::size_t i = 0; i < map.cells().size(); ++i) {
    const int a = static_cast<int>(classify(map[i]));
    const int b = static_cast<int>(classify(reference[i]));
    if (a == b) {
      ++inter[a];
      ++uni[a];
    } else {
      ++uni[a];
      ++uni[b];
    }
  }
  return {iou(inter[0], uni[0]), iou(inter[1], uni[1]), iou(inter[2], uni[2])};
}

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string report_json(const EvalReport& report) {
  json series = json::array();
  for (const ClassIou& c : report.series) series.push_back(iou_to(c));
  json doc = {{"format", "evigrid-report/1"},
              {"variant", report.variant},
              {"label", report.label},
              {"config_hash", report.config_hash},
              {"final", iou_to(report.final_iou)},
              {"series", std::move(series)}};
  if (report.ground_truth_iou) doc["ground_truth"] = iou_to(*report.ground_truth_iou);
  return doc.dump(2) + "\n";
}

EvalReport parse_report_json(const std::string& text) {
  try {
    const json doc = json::parse(text);
    if (doc.value("format", "") != "evigrid-report/1") throw ConfigError("not an evigrid report");
    EvalReport r;
    r.variant = doc.at("variant").get<std::string>();
    r.label = doc.at("label").get<std::string>();
    r.config_hash = doc.at("config_hash").get<std::string>();
    r.final_iou = iou_from(doc.at("final"));
    if (doc.contains("ground_truth")) r.ground_truth_iou = iou_from(doc.at("ground_truth"));
    for (const json& s : doc.at("series")) r.series.push_back(iou_from(s));
    return r;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("report schema mismatch: ") + e.what());
  }
}

void write_report_json(const EvalReport& report, const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw IoError("cannot write '" + path.string() + "'");
  os << report_json(report);
}

void write_report_csv(const EvalReport& report, const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw IoError("cannot write '" + path.string() + "'");
  os << "epoch,free,occupied,unknown\n";
  for (std::size_t k = 0; k < report.series.size(); ++k) {
    const ClassIou& c = report.series[k];
    os << k << ',' << format_double(c.free) << ',' << format_double(c.occupied) << ','
       << format_double(c.unknown) << '\n';
  }
}

EvalReport read_report_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open report '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_report_json(buf.str());
  } catch (const ConfigError& e) {
    throw ConfigError("'" + path.string() + "': " + e.what());
  }
}

std::string comparison_table(const std::vector<EvalReport>& reports) {
  std::ostringstream out;
  char line[160];
  std::snprintf(line, sizeof(line), "%-30s %8s %8s %8s\n", "ISM used for mapping", "fr.", "oc.", "un.");
  out << line;
  for (const EvalReport& r : reports) {
    std::snprintf(line, sizeof(line), "%-30s %8.2f %8.2f %8.2f\n", r.label.c_str(), r.final_iou.free,
                  r.final_iou.occupied, r.final_iou.unknown);
    out << line;
  }
  return out.str();
}

}  // namespace evigrid
