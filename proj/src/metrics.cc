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

#include "hytrack/metrics.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "hytrack/errors.h"

namespace hytrack {

namespace {

template <typename Entries>
void CheckIncreasing(const Entries& entries, const char* what) {
  for (size_t i = 1; i < entries.size(); ++i) {
    if (entries[i].frame <= entries[i - 1].frame) {
      throw ValidationError(std::string(what) +
                            ": frame indices must strictly increase (frame " +
                            std::to_string(entries[i].frame) + ")");
    }
  }
}

}  // namespace

void ValidateTrack(const GroundTruthTrack& gt) {
  CheckIncreasing(gt.entries, "ground truth");
  for (const auto& e : gt.entries) {
    if (e.frame < 0) throw ValidationError("ground truth: negative frame");
    if (e.visible && (!e.box || !e.box->valid())) {
      throw ValidationError("ground truth: visible frame " +
                            std::to_string(e.frame) + " has no valid box");
    }
  }
}

void ValidateTrack(const PredictedTrack& pred) {
  CheckIncreasing(pred.entries, "prediction");
  for (const auto& e : pred.entries) {
    if (e.frame < 0) throw ValidationError("prediction: negative frame");
    if (e.box && !e.box->valid()) {
      throw ValidationError("prediction: invalid box on frame " +
                            std::to_string(e.frame));
    }
  }
}

std::vector<FrameOverlap> PerFrameOverlaps(const PredictedTrack& pred,
                                           const GroundTruthTrack& gt) {
  std::vector<FrameOverlap> out;
  auto it = pred.entries.begin();
  for (const auto& g : gt.entries) {
    if (!g.visible || !g.box) continue;
    while (it != pred.entries.end() && it->frame < g.frame) ++it;
    double overlap = 0.0;
    if (it != pred.entries.end() && it->frame == g.frame && it->box) {
      overlap = Iou(*it->box, *g.box);
    }
    out.push_back({g.frame, overlap});
  }
  return out;
}

std::vector<double> OverlapValues(std::span<const FrameOverlap> overlaps) {
  std::vector<double> values;
  values.reserve(overlaps.size());
  for (const auto& o : overlaps) values.push_back(o.overlap);
  return values;
}

double AverageOverlap(std::span<const double> overlaps) {
  if (overlaps.empty()) {
    throw ValidationError("average overlap of an empty list");
  }
  double sum = 0.0;
  for (double v : overlaps) sum += v;
  return sum / static_cast<double>(overlaps.size());
}

double SuccessRate(std::span<const double> overlaps, double threshold) {
  if (overlaps.empty()) return 0.0;
  const auto hits = std::count_if(overlaps.begin(), overlaps.end(),
                                  [&](double v) { return v > threshold; });
  return static_cast<double>(hits) / static_cast<double>(overlaps.size());
}

OpeCurve ComputeOpeCurve(std::span<const double> overlaps,
                         std::span<const double> thresholds) {
  if (overlaps.empty()) throw ValidationError("OPE curve of no overlaps");
  if (thresholds.empty()) throw ValidationError("OPE curve needs thresholds");
  for (size_t i = 0; i < thresholds.size(); ++i) {
    const double t = thresholds[i];
    if (!(t >= 0.0 && t <= 1.0)) {
      throw ValidationError("OPE threshold outside [0, 1]");
    }
    if (i > 0 && t <= thresholds[i - 1]) {
      throw ValidationError("OPE thresholds must strictly increase");
    }
  }
  // Sorting once turns each rate into a binary search.
  std::vector<double> sorted(overlaps.begin(), overlaps.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  OpeCurve curve;
  curve.points.reserve(thresholds.size());
  for (double t : thresholds) {
    const auto first_above = std::upper_bound(sorted.begin(), sorted.end(), t);
    const double above = static_cast<double>(sorted.end() - first_above);
    curve.points.push_back({t, above / n});
  }
  return curve;
}

std::vector<double> ThresholdGrid(double step) {
  if (!(step > 0.0 && step <= 1.0)) {
    throw ValidationError("threshold step must be in (0, 1]");
  }
  const auto intervals = static_cast<int>(std::llround(1.0 / step));
  if (intervals < 1 || std::abs(intervals * step - 1.0) > 1e-9) {
    throw ValidationError("threshold step must divide 1 evenly");
  }
  std::vector<double> grid;
  grid.reserve(intervals + 1);
  for (int i = 0; i <= intervals; ++i) {
    grid.push_back(static_cast<double>(i) / intervals);
  }
  return grid;
}

std::vector<double> DefaultThresholds() { return ThresholdGrid(0.05); }

double Auc(const OpeCurve& curve) {
  const auto& p = curve.points;
  if (p.empty()) return 0.0;
  if (p.size() == 1) return p.front().success_rate;
  double area = 0.0;
  for (size_t i = 1; i < p.size(); ++i) {
    area += 0.5 * (p[i].success_rate + p[i - 1].success_rate) *
            (p[i].threshold - p[i - 1].threshold);
  }
  const double span = p.back().threshold - p.front().threshold;
  return std::clamp(area / span, 0.0, 1.0);
}

}  // namespace hytrack
