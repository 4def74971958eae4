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

#include "hytrack/track_output.h"

#include <fstream>
#include <istream>
#include <ostream>

#include "hytrack/errors.h"
#include "json_util.h"

namespace hytrack {

void WriteTrackOutputs(std::ostream& out, std::span<const TrackOutput> outputs,
                       bool with_timings) {
  for (const auto& o : outputs) {
    json_util::OrderedJson j;
    j["frame"] = o.frame_index;
    if (o.box && o.source != Source::kNone) {
      j["x"] = o.box->x;
      j["y"] = o.box->y;
      j["w"] = o.box->w;
      j["h"] = o.box->h;
    }
    j["source"] = SourceName(o.source);
    j["phase"] = PhaseName(o.phase);
    if (with_timings) {
      json_util::OrderedJson ms;
      ms["global"] = o.timings.global_ms;
      ms["roi"] = o.timings.roi_ms;
      ms["kcf"] = o.timings.kcf_ms;
      ms["total"] = o.timings.total_ms;
      j["ms"] = ms;
    }
    if (!o.failures.empty()) j["failed"] = o.failures;
    out << j.dump() << '\n';
  }
}

void WriteTrackOutputs(const std::filesystem::path& path,
                       std::span<const TrackOutput> outputs,
                       bool with_timings) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  WriteTrackOutputs(out, outputs, with_timings);
  if (!out) throw IoError("write failed: " + path.string());
}

TrackFile ParseTrackOutputs(std::istream& in) {
  TrackFile file;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto j = json_util::ParseLine(line, "track line");
      TrackOutput o;
      o.frame_index = json_util::IntegerField(j, "frame");
      auto source = j.find("source");
      auto phase = j.find("phase");
      if (source == j.end() || !source->is_string() || phase == j.end() ||
          !phase->is_string()) {
        throw ValidationError("missing 'source' or 'phase'");
      }
      o.source = ParseSource(source->get<std::string>());
      o.phase = ParsePhase(phase->get<std::string>());
      if (o.source != Source::kNone) {
        o.box = BBox{json_util::NumberField(j, "x"),
                     json_util::NumberField(j, "y"),
                     json_util::NumberField(j, "w"),
                     json_util::NumberField(j, "h")};
        if (!o.box->valid()) throw ValidationError("box must be positive");
      } else if (j.contains("x") || j.contains("y") || j.contains("w") ||
                 j.contains("h")) {
        throw ValidationError("source 'none' must not carry a box");
      }
      if (auto ms = j.find("ms"); ms != j.end() && ms->is_object()) {
        file.has_timings = true;
        o.timings.global_ms = json_util::NumberField(*ms, "global");
        o.timings.roi_ms = json_util::NumberField(*ms, "roi");
        o.timings.kcf_ms = json_util::NumberField(*ms, "kcf");
        o.timings.total_ms = json_util::NumberField(*ms, "total");
      }
      if (auto failed = j.find("failed");
          failed != j.end() && failed->is_array()) {
        for (const auto& f : *failed) {
          if (f.is_string()) o.failures.push_back(f.get<std::string>());
        }
      }
      if (!file.outputs.empty() &&
          o.frame_index <= file.outputs.back().frame_index) {
        throw ValidationError("frames must strictly increase");
      }
      file.outputs.push_back(std::move(o));
    } catch (const ValidationError& e) {
      throw ValidationError("track file line " + std::to_string(line_no) +
                            ": " + e.what());
    }
  }
  return file;
}

TrackFile ReadTrackOutputs(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return ParseTrackOutputs(in);
}

PredictedTrack ToPredictedTrack(std::span<const TrackOutput> outputs) {
  PredictedTrack pred;
  pred.entries.reserve(outputs.size());
  for (const auto& o : outputs) {
    pred.entries.push_back(
        {o.frame_index, o.source == Source::kNone ? std::nullopt : o.box});
  }
  return pred;
}

}  // namespace hytrack
