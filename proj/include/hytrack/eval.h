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

#ifndef HYTRACK_EVAL_H_
#define HYTRACK_EVAL_H_

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "hytrack/metrics.h"
#include "hytrack/pipeline.h"

namespace hytrack {

struct EvalReport {
  double avg_overlap = 0.0;
  double auc = 0.0;
  double success_at_05 = 0.0;
  OpeCurve ope;
  // 0 when the outputs carry no timings.
  double avg_fps = 0.0;
  int64_t lost_frames = 0;
  // Evaluated frames: visible ground truth within the output range.
  int64_t frame_count = 0;
  StageTimings per_stage_ms;

  friend bool operator==(const EvalReport& a, const EvalReport& b);
};

// Scores tracker outputs against ground truth over the visible frames that
// fall inside the outputs' frame range. A visible frame with no output, or
// with source "none", scores 0 and counts as lost. Throws ValidationError
// when no visible ground-truth frame falls in that range.
EvalReport Evaluate(std::span<const TrackOutput> outputs,
                    const GroundTruthTrack& gt,
                    std::span<const double> thresholds, bool has_timings = true);

enum class ReportFormat { kJson, kCsv };

ReportFormat ParseReportFormat(const std::string& text);

// JSON keys, in order: avg_overlap, auc, success_at_05, avg_fps,
// lost_frames, frame_count, ope:[{t,rate}], per_stage_ms:{global,roi,kcf,
// total}. CSV: a header, one "ope" row per curve point, one "summary" row.
void WriteReport(std::ostream& out, const EvalReport& report,
                 ReportFormat format);
void WriteReport(const std::filesystem::path& path, const EvalReport& report,
                 ReportFormat format);

EvalReport ParseReportJson(std::istream& in);

}  // namespace hytrack

#endif  // HYTRACK_EVAL_H_
