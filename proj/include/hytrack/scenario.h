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

#ifndef HYTRACK_SCENARIO_H_
#define HYTRACK_SCENARIO_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "hytrack/bbox.h"
#include "hytrack/detector.h"
#include "hytrack/frame.h"
#include "hytrack/frame_source.h"
#include "hytrack/metrics.h"

namespace hytrack {

// Piecewise-linear motion of a box center. The object starts at the first
// waypoint, moves toward each next one at that segment's speed (px/frame)
// and rests at the last.
struct Trajectory {
  double w = 0.0;
  double h = 0.0;
  std::vector<std::array<double, 2>> waypoints;
  // One per segment (waypoints.size() - 1 entries).
  std::vector<double> speeds;
  // Distractors only: drawn with the target's colors.
  bool similar = true;

  std::array<double, 2> CenterAt(int64_t frame) const;
};

enum class EventKind {
  kCameraSwitch,
  kOcclusionPartial,
  kOcclusionTotal,
  kOutOfFrame,
  kBlur,
};

struct Event {
  EventKind kind = EventKind::kBlur;
  int64_t start_frame = 0;
  int64_t end_frame = 0;  // inclusive
  // kCameraSwitch: everything in view is displaced by (dx, dy).
  double dx = 0.0;
  double dy = 0.0;
  // kOcclusionPartial: fraction of the target width covered, from the left.
  double coverage = 0.0;
  // kBlur: box-blur radius in pixels.
  int radius = 0;

  bool active(int64_t frame) const {
    return frame >= start_frame && frame <= end_frame;
  }
};

struct NoiseModel {
  double jitter_sigma = 0.0;  // px, detection center
  double size_sigma = 0.0;    // px, detection width / height
  double miss_prob = 0.0;
  double false_positive_rate = 0.0;  // expected count per frame
  double score_mean = 0.9;
  double score_sigma = 0.0;
  double global_latency_ms = 0.0;
  double roi_latency_ms = 0.0;
};

struct Scenario {
  int width = 640;
  int height = 360;
  double fps = 60.0;
  int64_t num_frames = 100;
  uint64_t seed = 1;
  Trajectory target;
  std::vector<Trajectory> distractors;
  std::vector<Event> events;
  NoiseModel noise;

  // Throws ValidationError on any broken invariant.
  void Validate() const;
};

// The scenario document; see docs/scenario.md for the schema.
Scenario ParseScenario(std::istream& in);
Scenario ReadScenario(const std::filesystem::path& path);

// Integer-aligned target box in frame coordinates before clipping, with
// camera displacement applied. Absent while the target is out of frame.
std::optional<BBox> TargetBoxAt(const Scenario& scenario, int64_t frame);

// Visible (=1) unless a total occlusion or out-of-frame event is active or
// the box falls entirely outside the frame; visible boxes are clipped to the
// frame.
GroundTruthTrack GroundTruthFor(const Scenario& scenario);

Frame RenderFrame(const Scenario& scenario, int64_t frame);

// Mean over the (2r+1)^2 neighborhood with border replication, per channel,
// rounded to nearest.
Frame BoxBlur(const Frame& frame, int radius);

struct DetectionStreams {
  DetectionScript global;
  DetectionScript roi;
};

// Detector outputs drawn from the ground truth through the noise model.
// Invisible frames never contain a true detection.
DetectionStreams SampleDetections(const Scenario& scenario,
                                  const GroundTruthTrack& gt);

struct GeneratedBundle {
  std::filesystem::path root;
  std::filesystem::path frames_dir;
  std::filesystem::path ground_truth;
  std::filesystem::path global_detections;
  std::filesystem::path roi_detections;
  std::filesystem::path meta;
};

// Writes frames/, gt.csv, det_global.jsonl, det_roi.jsonl and meta.json.
// Identical scenarios produce byte-identical bundles.
GeneratedBundle Generate(const Scenario& scenario,
                         const std::filesystem::path& out_dir);

// Renders frames on demand instead of reading them from disk.
class ScenarioFrameSource : public FrameSource {
 public:
  explicit ScenarioFrameSource(Scenario scenario)
      : scenario_(std::move(scenario)) {}
  int64_t count() const override { return scenario_.num_frames; }
  FrameInput Load(int64_t index) override;

 private:
  Scenario scenario_;
};

}  // namespace hytrack

#endif  // HYTRACK_SCENARIO_H_
