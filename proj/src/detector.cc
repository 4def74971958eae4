// Copyright 2026 The Hytrack Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hytrack/detector.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <thread>

#include "hytrack/errors.h"
#include "hytrack/remote_detector.h"
#include "json_util.h"

namespace hytrack {

std::vector<Detection> Detector::Detect(const DetectionQuery& query) {
  const auto start = std::chrono::steady_clock::now();
  auto detections = DetectRaw(query);
  if (query.roi) detections = ConfineToRoi(std::move(detections), *query.roi);
  std::stable_sort(detections.begin(), detections.end(),
                   [](const Detection& a, const Detection& b) {
                     return a.score > b.score;
                   });
  if (latency_) std::this_thread::sleep_until(start + *latency_);
  return detections;
}

std::optional<Detection> BestDetection(std::span<const Detection> detections,
                                       double min_score) {
  std::optional<Detection> best;
  for (const auto& d : detections) {
    if (d.score >= min_score && (!best || d.score > best->score)) best = d;
  }
  return best;
}

std::vector<Detection> ConfineToRoi(std::vector<Detection> detections,
                                    const BBox& roi) {
  std::vector<Detection> out;
  out.reserve(detections.size());
  for (auto& d : detections) {
    const double cx = d.box.center_x();
    const double cy = d.box.center_y();
    if (cx < roi.x || cx > roi.right() || cy < roi.y || cy > roi.bottom()) {
      continue;
    }
    auto clipped = ClipTo(d.box, roi);
    if (!clipped) continue;
    d.box = *clipped;
    out.push_back(d);
  }
  return out;
}

DetectionScript ParseDetectionScript(std::istream& in) {
  DetectionScript script;
  std::string line;
  size_t line_no = 0;
  int64_t last_frame = -1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto j = json_util::ParseLine(line, "detection line");
      const int64_t frame = json_util::IntegerField(j, "frame");
      if (frame < 0 || frame <= last_frame) {
        throw ValidationError("frames must be non-negative and sorted");
      }
      last_frame = frame;
      auto dets = j.find("detections");
      if (dets == j.end() || !dets->is_array()) {
        throw ValidationError("missing 'detections' array");
      }
      auto& list = script[frame];
      for (const auto& d : *dets) list.push_back(json_util::ParseDetection(d));
    } catch (const ValidationError& e) {
      throw ValidationError("detection script line " + std::to_string(line_no) +
                            ": " + e.what());
    }
  }
  return script;
}

DetectionScript ReadDetectionScript(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return ParseDetectionScript(in);
}

void WriteDetectionScript(std::ostream& out, const DetectionScript& script,
                          int64_t frame_count) {
  for (int64_t f = 0; f < frame_count; ++f) {
    json_util::OrderedJson j;
    j["frame"] = f;
    j["detections"] = json_util::OrderedJson::array();
    if (auto it = script.find(f); it != script.end()) {
      for (const auto& d : it->second) {
        j["detections"].push_back(json_util::DetectionToJson(d));
      }
    }
    out << j.dump() << '\n';
  }
}

std::vector<Detection> ScriptedDetector::DetectRaw(
    const DetectionQuery& query) {
  auto it = script_.find(query.frame_index);
  if (it == script_.end()) return {};
  return it->second;
}

DetectorSpec ParseDetectorSpec(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw ValidationError("detector spec needs a kind prefix: " + text);
  }
  const std::string kind = text.substr(0, colon);
  std::string rest = text.substr(colon + 1);
  if (rest.empty()) throw ValidationError("empty detector source: " + text);
  DetectorSpec spec;
  spec.source = rest;
  if (kind == "scripted") {
    spec.kind = DetectorKind::kScripted;
    const auto at = rest.rfind('@');
    if (at != std::string::npos && rest.size() > at + 3 &&
        rest.ends_with("ms")) {
      const std::string_view digits(rest.data() + at + 1,
                                    rest.size() - at - 3);
      int64_t ms = 0;
      auto [end, ec] =
          std::from_chars(digits.data(), digits.data() + digits.size(), ms);
      if (ec != std::errc() || end != digits.data() + digits.size() || ms < 0) {
        throw ValidationError("bad latency in detector spec: " + text);
      }
      spec.simulated_latency = std::chrono::milliseconds(ms);
      spec.source = rest.substr(0, at);
      if (spec.source.empty()) {
        throw ValidationError("empty detector source: " + text);
      }
    }
  } else if (kind == "exec") {
    spec.kind = DetectorKind::kSubprocess;
  } else if (kind == "tcp") {
    spec.kind = DetectorKind::kTcp;
    const auto sep = rest.rfind(':');
    if (sep == std::string::npos || sep == 0 || sep + 1 == rest.size()) {
      throw ValidationError("tcp detector needs host:port: " + text);
    }
  } else {
    throw ValidationError("unknown detector kind '" + kind + "'");
  }
  return spec;
}

std::unique_ptr<Detector> MakeDetector(const DetectorSpec& spec) {
  switch (spec.kind) {
    case DetectorKind::kScripted:
      return std::make_unique<ScriptedDetector>(
          ReadDetectionScript(spec.source), spec.simulated_latency);
    case DetectorKind::kSubprocess:
      return std::make_unique<RemoteDetector>(
          std::make_unique<SubprocessTransport>(spec.source),
          RemoteDetector::Options{.latency = spec.simulated_latency});
    case DetectorKind::kTcp: {
      const auto sep = spec.source.rfind(':');
      int port = 0;
      const std::string port_text = spec.source.substr(sep + 1);
      auto [end, ec] = std::from_chars(
          port_text.data(), port_text.data() + port_text.size(), port);
      if (ec != std::errc() || end != port_text.data() + port_text.size() ||
          port <= 0 || port > 65535) {
        throw ValidationError("bad tcp port: " + spec.source);
      }
      auto transport =
          std::make_unique<TcpTransport>(spec.source.substr(0, sep), port);
      transport->Open();
      return std::make_unique<RemoteDetector>(
          std::move(transport),
          RemoteDetector::Options{.latency = spec.simulated_latency});
    }
  }
  throw ValidationError("unknown detector kind");
}

}  // namespace hytrack
