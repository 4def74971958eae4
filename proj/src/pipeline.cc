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

#include "hytrack/pipeline.h"

#include <algorithm>
#include <chrono>
#include <thread>

#include "hytrack/errors.h"

namespace hytrack {

namespace {

using Clock = std::chrono::steady_clock;

double MillisSince(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start)
      .count();
}

// Keeps the box center on the frame so the box always overlaps it.
BBox ClampCenterToFrame(const BBox& box, const Frame& frame) {
  const double cx = std::clamp(box.center_x(), 0.0,
                               static_cast<double>(frame.width()));
  const double cy = std::clamp(box.center_y(), 0.0,
                               static_cast<double>(frame.height()));
  return BBox::FromCenter(cx, cy, box.w, box.h);
}

}  // namespace

const char* PhaseName(Phase phase) {
  switch (phase) {
    case Phase::kAcquiring:
      return "ACQUIRING";
    case Phase::kTracking:
      return "TRACKING";
    case Phase::kLost:
      return "LOST";
  }
  return "?";
}

const char* SourceName(Source source) {
  switch (source) {
    case Source::kGlobal:
      return "global";
    case Source::kKcf:
      return "kcf";
    case Source::kNone:
      return "none";
  }
  return "?";
}

Phase ParsePhase(const std::string& text) {
  if (text == "ACQUIRING") return Phase::kAcquiring;
  if (text == "TRACKING") return Phase::kTracking;
  if (text == "LOST") return Phase::kLost;
  throw ValidationError("unknown phase '" + text + "'");
}

Source ParseSource(const std::string& text) {
  if (text == "global") return Source::kGlobal;
  if (text == "kcf") return Source::kKcf;
  if (text == "none") return Source::kNone;
  throw ValidationError("unknown source '" + text + "'");
}

void FusionConfig::Validate() const {
  auto ratio = [](double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw ValidationError(std::string(name) + " must be in [0, 1]");
    }
  };
  if (jump < 1) throw ValidationError("jump must be >= 1");
  if (!(crop_scale > 1.0)) throw ValidationError("crop_scale must exceed 1");
  ratio(global_score_min, "global_score_min");
  ratio(roi_score_min, "roi_score_min");
  ratio(divergence_iou, "divergence_iou");
  ratio(global_resync_iou, "global_resync_iou");
  if (divergence_frames < 1) {
    throw ValidationError("divergence_frames must be >= 1");
  }
  if (!(kcf_peak_min >= 0.0)) {
    throw ValidationError("kcf_peak_min must be non-negative");
  }
  if (lost_after < 1) throw ValidationError("lost_after must be >= 1");
  if (!use_kcf && use_roi_detector) {
    throw ValidationError("the ROI detector requires KCF to be enabled");
  }
  kcf_params.Validate();
}

Pipeline::Pipeline(FusionConfig config,
                   std::unique_ptr<Detector> global_detector,
                   std::unique_ptr<Detector> roi_detector)
    : config_(std::move(config)),
      global_(std::move(global_detector)),
      roi_(std::move(roi_detector)) {
  config_.Validate();
  if (!global_) throw ValidationError("a global detector is required");
  if (config_.use_roi_detector && !roi_) {
    throw ValidationError("ROI detector enabled but none given");
  }
}

Pipeline::~Pipeline() {
  if (pending_ && pending_->valid()) pending_->wait();
}

TrackOutput Pipeline::Step(const FrameInput& frame) {
  if (!frame.image || frame.image->empty()) {
    throw ValidationError("pipeline step needs a frame image");
  }
  if (last_frame_ && frame.index <= *last_frame_) {
    throw ValidationError("frame indices must strictly increase");
  }
  last_frame_ = frame.index;
  const auto start = Clock::now();
  TrackOutput out = config_.mode == PipelineMode::kSynchronous
                        ? StepSynchronous(frame)
                        : StepPipelined(frame);
  out.timings.total_ms = MillisSince(start);
  ++frames_processed_;
  return out;
}

std::vector<TrackOutput> Pipeline::Run(FrameSource& frames) {
  std::vector<TrackOutput> outputs;
  outputs.reserve(static_cast<size_t>(frames.count()));
  for (int64_t i = 0; i < frames.count(); ++i) {
    outputs.push_back(Step(frames.Load(i)));
  }
  return outputs;
}

TrackOutput Pipeline::StepSynchronous(const FrameInput& frame) {
  TrackOutput out;
  out.frame_index = frame.index;
  const Frame& image = *frame.image;
  const bool tracking = config_.use_kcf && state_.phase == Phase::kTracking;
  const bool jump_frame = frame.index % config_.jump == 0;

  if (!tracking || jump_frame) {
    const GlobalResult result = RunGlobal(frame);
    out.timings.global_ms = result.ms;
    if (result.failed) out.failures.push_back("global");
    if (auto det = ConfidentGlobal(result, image)) {
      ApplyGlobal(*det, image, out);
      return out;
    }
    if (!tracking) {
      if (!config_.use_kcf) {
        state_.phase = ever_tracked_ ? Phase::kLost : Phase::kAcquiring;
      }
      EmitNone(out);
      return out;
    }
    // Unconfident jump frame while tracking: handled like any other frame.
  }
  TrackLocal(frame, out);
  return out;
}

TrackOutput Pipeline::StepPipelined(const FrameInput& frame) {
  TrackOutput out;
  out.frame_index = frame.index;
  const Frame& image = *frame.image;
  const bool tracking = config_.use_kcf && state_.phase == Phase::kTracking;

  if (!pending_ && (!tracking || frame.index % config_.jump == 0)) {
    pending_ = std::async(std::launch::async,
                          [this, frame] { return RunGlobal(frame); });
  }

  if (tracking) {
    TrackLocal(frame, out);
  } else {
    EmitNone(out);
  }

  // Frame boundary: apply a finished global detection, never wait for one.
  // The yield lets the worker run when both share a single core.
  if (pending_) std::this_thread::yield();
  if (pending_ && pending_->wait_for(std::chrono::seconds(0)) ==
                      std::future_status::ready) {
    const GlobalResult result = pending_->get();
    pending_.reset();
    out.timings.global_ms = result.ms;
    if (result.failed) out.failures.push_back("global");
    if (auto det = ConfidentGlobal(result, image)) {
      ApplyGlobal(*det, image, out);
    } else if (!config_.use_kcf) {
      state_.phase = ever_tracked_ ? Phase::kLost : Phase::kAcquiring;
      EmitNone(out);
    }
  } else if (!config_.use_kcf) {
    state_.phase = ever_tracked_ ? Phase::kLost : Phase::kAcquiring;
    EmitNone(out);
  }
  return out;
}

Pipeline::GlobalResult Pipeline::RunGlobal(const FrameInput& frame) {
  GlobalResult result;
  result.issued_frame = frame.index;
  const auto start = Clock::now();
  DetectionQuery query;
  query.frame_index = frame.index;
  query.frame = frame.image;
  query.image = frame.path;
  try {
    result.detections = global_->Detect(query);
  } catch (const TransportError&) {
    result.failed = true;
  }
  result.ms = MillisSince(start);
  return result;
}

std::optional<Detection> Pipeline::ConfidentGlobal(const GlobalResult& result,
                                                   const Frame& image) const {
  const auto on_frame = ConfineToRoi(result.detections, image.bounds());
  return BestDetection(on_frame, config_.global_score_min);
}

void Pipeline::ApplyGlobal(const Detection& det, const Frame& image,
                           TrackOutput& out) {
  ever_tracked_ = true;
  if (config_.use_kcf) {
    const auto start = Clock::now();
    if (state_.phase != Phase::kTracking || !state_.kcf) {
      state_.kcf = KcfInit(image, det.box, config_.kcf_params);
      out.kcf_event = KcfEvent::kInit;
    } else if (!state_.current_box ||
               Iou(det.box, *state_.current_box) < config_.global_resync_iou) {
      state_.kcf = KcfReinit(*state_.kcf, image, det.box);
      out.kcf_event = KcfEvent::kGlobalResync;
    }
    out.timings.kcf_ms += MillisSince(start);
    RecenterRoi(det.box, image);
  }
  state_.phase = Phase::kTracking;
  state_.current_box = det.box;
  state_.divergence_count = 0;
  state_.no_evidence_count = 0;
  out.box = det.box;
  out.source = Source::kGlobal;
  out.phase = Phase::kTracking;
}

void Pipeline::TrackLocal(const FrameInput& frame, TrackOutput& out) {
  const Frame& image = *frame.image;

  std::optional<Detection> roi_best;
  if (config_.use_roi_detector && state_.roi) {
    const auto start = Clock::now();
    DetectionQuery query;
    query.frame_index = frame.index;
    query.frame = frame.image;
    query.image = frame.path;
    query.roi = state_.roi;
    try {
      const auto detections = roi_->Detect(query);
      roi_best = BestDetection(detections, config_.roi_score_min);
    } catch (const TransportError&) {
      out.failures.push_back("roi");
    }
    out.timings.roi_ms = MillisSince(start);
  }

  const auto kcf_start = Clock::now();
  const KcfLocation loc = KcfLocate(*state_.kcf, image);
  BBox box = ClampCenterToFrame(loc.box, image);
  const bool confident_kcf = loc.peak >= config_.kcf_peak_min;

  if (roi_best) {
    if (Iou(box, roi_best->box) < config_.divergence_iou) {
      ++state_.divergence_count;
    } else {
      state_.divergence_count = 0;
    }
  }
  if (state_.divergence_count > config_.divergence_frames) {
    state_.kcf = KcfReinit(*state_.kcf, image, roi_best->box);
    state_.divergence_count = 0;
    box = state_.kcf->box();
    out.kcf_event = KcfEvent::kDivergenceReinit;
  } else if (confident_kcf) {
    state_.kcf = KcfUpdate(std::move(*state_.kcf), image, box);
  }
  out.timings.kcf_ms += MillisSince(kcf_start);

  state_.current_box = box;
  RecenterRoi(roi_best ? roi_best->box : box, image);
  out.box = box;
  out.source = Source::kKcf;
  out.phase = Phase::kTracking;

  if (!confident_kcf && !roi_best) {
    ++state_.no_evidence_count;
  } else {
    state_.no_evidence_count = 0;
  }
  if (state_.no_evidence_count >= config_.lost_after) DropTrack(out);
}

void Pipeline::RecenterRoi(const BBox& on, const Frame& image) {
  state_.roi = SquareCrop(on, config_.crop_scale, image.bounds());
}

void Pipeline::DropTrack(TrackOutput& out) {
  state_.phase = Phase::kLost;
  state_.kcf.reset();
  state_.roi.reset();
  state_.current_box.reset();
  state_.divergence_count = 0;
  state_.no_evidence_count = 0;
  out.kcf_event = KcfEvent::kDropped;
  EmitNone(out);
}

void Pipeline::EmitNone(TrackOutput& out) const {
  out.box.reset();
  out.source = Source::kNone;
  out.phase = state_.phase;
}

}  // namespace hytrack
