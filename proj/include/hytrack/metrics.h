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

#ifndef HYTRACK_METRICS_H_
#define HYTRACK_METRICS_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hytrack/bbox.h"

namespace hytrack {

struct GroundTruthEntry {
  int64_t frame = 0;
  std::optional<BBox> box;
  bool visible = false;
};

// Entries are kept with strictly increasing frame indices. Frames that do
// not appear are treated as not visible.
struct GroundTruthTrack {
  std::vector<GroundTruthEntry> entries;
};

struct PredictedEntry {
  int64_t frame = 0;
  std::optional<BBox> box;
};

struct PredictedTrack {
  std::vector<PredictedEntry> entries;
};

struct FrameOverlap {
  int64_t frame = 0;
  double overlap = 0.0;
};

struct OpePoint {
  double threshold = 0.0;
  double success_rate = 0.0;
};

// Success rate against overlap threshold. Thresholds strictly increase and
// rates never increase.
struct OpeCurve {
  std::vector<OpePoint> points;
};

// Throws ValidationError if frame indices are not strictly increasing or a
// visible entry lacks a valid box.
void ValidateTrack(const GroundTruthTrack& gt);
void ValidateTrack(const PredictedTrack& pred);

// One entry per visible ground-truth frame: the IoU with the prediction on
// that frame, or 0 when there is none. Invisible frames are skipped, and so
// is any prediction made on them.
std::vector<FrameOverlap> PerFrameOverlaps(const PredictedTrack& pred,
                                           const GroundTruthTrack& gt);

std::vector<double> OverlapValues(std::span<const FrameOverlap> overlaps);

// Arithmetic mean. Throws ValidationError on an empty list.
double AverageOverlap(std::span<const double> overlaps);

// Fraction of overlaps strictly greater than `threshold`.
double SuccessRate(std::span<const double> overlaps, double threshold);

// Thresholds must strictly increase inside [0, 1]; overlaps must be
// non-empty. Both violations throw ValidationError.
OpeCurve ComputeOpeCurve(std::span<const double> overlaps,
                         std::span<const double> thresholds);

// 0, step, 2*step, ..., 1 (inclusive). Each value is i * step rather than a
// running sum so the grid does not accumulate rounding.
std::vector<double> ThresholdGrid(double step);

// The default evaluation grid: 21 points, step 0.05.
std::vector<double> DefaultThresholds();

// Trapezoidal integral of the curve, normalized by the threshold span.
double Auc(const OpeCurve& curve);

}  // namespace hytrack

#endif  // HYTRACK_METRICS_H_
