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

#include "hytrack/eval.h"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>

#include "hytrack/errors.h"
#include "hytrack/track_output.h"
#include "json_util.h"

namespace hytrack {

namespace {

// Shortest representation that round-trips.
std::string FormatDouble(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

}  // namespace

bool operator==(const EvalReport& a, const EvalReport& b) {
  if (a.ope.points.size() != b.ope.points.size()) return false;
  for (size_t i = 0; i < a.ope.points.size(); ++i) {
    if (a.ope.points[i].threshold != b.ope.points[i].threshold ||
        a.ope.points[i].success_rate != b.ope.points[i].success_rate) {
      return false;
    }
  }
  return a.avg_overlap == b.avg_overlap && a.auc == b.auc &&
         a.success_at_05 == b.success_at_05 && a.avg_fps == b.avg_fps &&
         a.lost_frames == b.lost_frames && a.frame_count == b.frame_count &&
         a.per_stage_ms.global_ms == b.per_stage_ms.global_ms &&
         a.per_stage_ms.roi_ms == b.per_stage_ms.roi_ms &&
         a.per_stage_ms.kcf_ms == b.per_stage_ms.kcf_ms &&
         a.per_stage_ms.total_ms == b.per_stage_ms.total_ms;
}

EvalReport Evaluate(std::span<const TrackOutput> outputs,
                    const GroundTruthTrack& gt,
                    std::span<const double> thresholds, bool has_timings) {
  ValidateTrack(gt);
  if (outputs.empty()) throw ValidationError("no tracker outputs to evaluate");
  const int64_t first = outputs.front().frame_index;
  const int64_t last = outputs.back().frame_index;

  GroundTruthTrack in_range;
  for (const auto& e : gt.entries) {
    if (e.frame >= first && e.frame <= last) in_range.entries.push_back(e);
  }
  const PredictedTrack pred = ToPredictedTrack(outputs);
  ValidateTrack(pred);
  const auto overlaps = PerFrameOverlaps(pred, in_range);
  if (overlaps.empty()) {
    throw ValidationError(
        "outputs and ground truth share no visible frames");
  }
  const auto values = OverlapValues(overlaps);

  EvalReport r;
  r.avg_overlap = AverageOverlap(values);
  r.ope = ComputeOpeCurve(values, thresholds);
  r.auc = Auc(r.ope);
  r.success_at_05 = SuccessRate(values, 0.5);
  r.frame_count = static_cast<int64_t>(values.size());

  // Visible frames with no emitted box.
  auto it = pred.entries.begin();
  for (const auto& o : overlaps) {
    while (it != pred.entries.end() && it->frame < o.frame) ++it;
    const bool emitted =
        it != pred.entries.end() && it->frame == o.frame && it->box;
    if (!emitted) ++r.lost_frames;
  }

  if (has_timings) {
    StageTimings sum;
    for (const auto& o : outputs) {
      sum.global_ms += o.timings.global_ms;
      sum.roi_ms += o.timings.roi_ms;
      sum.kcf_ms += o.timings.kcf_ms;
      sum.total_ms += o.timings.total_ms;
    }
    const double n = static_cast<double>(outputs.size());
    r.per_stage_ms = {sum.global_ms / n, sum.roi_ms / n, sum.kcf_ms / n,
                      sum.total_ms / n};
    if (r.per_stage_ms.total_ms > 0.0) {
      r.avg_fps = 1000.0 / r.per_stage_ms.total_ms;
    }
  }
  return r;
}

ReportFormat ParseReportFormat(const std::string& text) {
  if (text == "json") return ReportFormat::kJson;
  if (text == "csv") return ReportFormat::kCsv;
  throw ValidationError("report format must be json or csv");
}

void WriteReport(std::ostream& out, const EvalReport& r, ReportFormat format) {
  if (format == ReportFormat::kJson) {
    json_util::OrderedJson j;
    j["avg_overlap"] = r.avg_overlap;
    j["auc"] = r.auc;
    j["success_at_05"] = r.success_at_05;
    j["avg_fps"] = r.avg_fps;
    j["lost_frames"] = r.lost_frames;
    j["frame_count"] = r.frame_count;
    j["ope"] = json_util::OrderedJson::array();
    for (const auto& p : r.ope.points) {
      json_util::OrderedJson point;
      point["t"] = p.threshold;
      point["rate"] = p.success_rate;
      j["ope"].push_back(point);
    }
    json_util::OrderedJson ms;
    ms["global"] = r.per_stage_ms.global_ms;
    ms["roi"] = r.per_stage_ms.roi_ms;
    ms["kcf"] = r.per_stage_ms.kcf_ms;
    ms["total"] = r.per_stage_ms.total_ms;
    j["per_stage_ms"] = ms;
    out << j.dump(2) << '\n';
    return;
  }
  out << "row,t,rate,avg_overlap,auc,success_at_05,avg_fps,lost_frames,"
         "frame_count,global_ms,roi_ms,kcf_ms,total_ms\n";
  for (const auto& p : r.ope.points) {
    out << "ope," << FormatDouble(p.threshold) << ','
        << FormatDouble(p.success_rate) << ",,,,,,,,,,\n";
  }
  out << "summary,,," << FormatDouble(r.avg_overlap) << ','
      << FormatDouble(r.auc) << ',' << FormatDouble(r.success_at_05) << ','
      << FormatDouble(r.avg_fps) << ',' << r.lost_frames << ','
      << r.frame_count << ',' << FormatDouble(r.per_stage_ms.global_ms) << ','
      << FormatDouble(r.per_stage_ms.roi_ms) << ','
      << FormatDouble(r.per_stage_ms.kcf_ms) << ','
      << FormatDouble(r.per_stage_ms.total_ms) << '\n';
}

void WriteReport(const std::filesystem::path& path, const EvalReport& report,
                 ReportFormat format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  WriteReport(out, report, format);
  if (!out) throw IoError("write failed: " + path.string());
}

EvalReport ParseReportJson(std::istream& in) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("report: ") + e.what());
  }
  EvalReport r;
  r.avg_overlap = json_util::NumberField(j, "avg_overlap");
  r.auc = json_util::NumberField(j, "auc");
  r.success_at_05 = json_util::NumberField(j, "success_at_05");
  r.avg_fps = json_util::NumberField(j, "avg_fps");
  r.lost_frames = json_util::IntegerField(j, "lost_frames");
  r.frame_count = json_util::IntegerField(j, "frame_count");
  if (!j.contains("ope") || !j["ope"].is_array()) {
    throw ValidationError("report: missing ope array");
  }
  for (const auto& p : j["ope"]) {
    r.ope.points.push_back({json_util::NumberField(p, "t"),
                            json_util::NumberField(p, "rate")});
  }
  if (!j.contains("per_stage_ms")) {
    throw ValidationError("report: missing per_stage_ms");
  }
  const auto& ms = j["per_stage_ms"];
  r.per_stage_ms = {json_util::NumberField(ms, "global"),
                    json_util::NumberField(ms, "roi"),
                    json_util::NumberField(ms, "kcf"),
                    json_util::NumberField(ms, "total")};
  return r;
}

}  // namespace hytrack
