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

#ifndef HYTRACK_PIPELINE_H_
#define HYTRACK_PIPELINE_H_

#include <cstdint>
#include <future>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hytrack/bbox.h"
#include "hytrack/detector.h"
#include "hytrack/frame_source.h"
#include "hytrack/kcf.h"

namespace hytrack {

enum class Phase { kAcquiring, kTracking, kLost };
enum class Source { kGlobal, kKcf, kNone };
enum class PipelineMode { kSynchronous, kPipelined };

const char* PhaseName(Phase phase);
const char* SourceName(Source source);
Phase ParsePhase(const std::string& text);
Source ParseSource(const std::string& text);

struct FusionConfig {
  // Period of the full-frame detector, in frames.
  int jump = 3;
  // ROI side as a multiple of the larger target side.
  double crop_scale = 3.0;
  double global_score_min = 0.6;
  double roi_score_min = 0.6;
  // KCF and ROI detection disagree when their IoU is below this.
  double divergence_iou = 0.3;
  // KCF is re-seeded once disagreement lasts longer than this many frames.
  int divergence_frames = 3;
  // A confident global detection re-seeds KCF when their IoU is below this.
  double global_resync_iou = 0.3;
  KcfParams kcf_params;
  double kcf_peak_min = 0.25;
  // Consecutive frames without evidence before the track is dropped.
  int lost_after = 10;
  PipelineMode mode = PipelineMode::kSynchronous;
  // Both false gives the detector-only baseline: the global detector runs on
  // every frame and its confident detections are the only output.
  bool use_roi_detector = true;
  bool use_kcf = true;

  void Validate() const;
};

struct StageTimings {
  double global_ms = 0.0;
  double roi_ms = 0.0;
  double kcf_ms = 0.0;
  double total_ms = 0.0;
};

// What happened to the KCF model on a frame.
enum class KcfEvent { kNone, kInit, kGlobalResync, kDivergenceReinit, kDropped };

struct TrackOutput {
  int64_t frame_index = 0;
  std::optional<BBox> box;  // absent iff source == kNone
  Source source = Source::kNone;
  Phase phase = Phase::kAcquiring;
  StageTimings timings;
  KcfEvent kcf_event = KcfEvent::kNone;
  // Stages whose detector failed on this frame ("global", "roi").
  std::vector<std::string> failures;
};

struct TrackState {
  Phase phase = Phase::kAcquiring;
  std::optional<BBox> current_box;
  std::optional<BBox> roi;
  int divergence_count = 0;
  int no_evidence_count = 0;
  std::optional<KcfModel> kcf;
};

// Multi-rate tracker combining a slow full-frame detector, a per-frame ROI
// detector and KCF.
//
// Synchronous mode is deterministic and is the reference behavior. In
// pipelined mode the global detector runs on a worker thread; its result is
// applied at the end of the first frame during which it has completed, and
// no frame ever waits for it.
class Pipeline {
 public:
  // `roi_detector` may be null only when config.use_roi_detector is false.
  // Throws ValidationError on an invalid config.
  Pipeline(FusionConfig config, std::unique_ptr<Detector> global_detector,
           std::unique_ptr<Detector> roi_detector);
  ~Pipeline();

  Pipeline(const Pipeline&) = delete;
  Pipeline& operator=(const Pipeline&) = delete;

  // frame.index must strictly increase across calls.
  TrackOutput Step(const FrameInput& frame);

  // One output per frame, in order.
  std::vector<TrackOutput> Run(FrameSource& frames);

  const TrackState& state() const { return state_; }
  const FusionConfig& config() const { return config_; }
  int64_t frames_processed() const { return frames_processed_; }

 private:
  struct GlobalResult {
    int64_t issued_frame = 0;
    std::vector<Detection> detections;
    bool failed = false;
    double ms = 0.0;
  };

  TrackOutput StepSynchronous(const FrameInput& frame);
  TrackOutput StepPipelined(const FrameInput& frame);

  GlobalResult RunGlobal(const FrameInput& frame);
  std::optional<Detection> ConfidentGlobal(const GlobalResult& result,
                                           const Frame& image) const;
  // Confident global detection: start or resync the track and emit it.
  void ApplyGlobal(const Detection& det, const Frame& image, TrackOutput& out);
  // KCF + ROI path for a frame in TRACKING.
  void TrackLocal(const FrameInput& frame, TrackOutput& out);
  void RecenterRoi(const BBox& on, const Frame& image);
  void DropTrack(TrackOutput& out);
  void EmitNone(TrackOutput& out) const;

  FusionConfig config_;
  std::unique_ptr<Detector> global_;
  std::unique_ptr<Detector> roi_;
  TrackState state_;
  std::optional<int64_t> last_frame_;
  int64_t frames_processed_ = 0;
  bool ever_tracked_ = false;
  std::optional<std::future<GlobalResult>> pending_;
};

}  // namespace hytrack

#endif  // HYTRACK_PIPELINE_H_
