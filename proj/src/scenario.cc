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

#include "hytrack/scenario.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <string>

#include "hytrack/errors.h"
#include "hytrack/rng.h"
#include "hytrack/track_io.h"
#include "json_util.h"

namespace hytrack {

namespace {

constexpr Rgb kBackground = {46, 120, 52};
constexpr Rgb kTargetDark = {200, 30, 40};
constexpr Rgb kTargetLight = {235, 235, 235};
constexpr Rgb kOtherDark = {30, 60, 200};
constexpr Rgb kOtherLight = {240, 220, 40};
constexpr Rgb kOccluder = {90, 90, 90};

bool AnyActive(const Scenario& s, EventKind kind, int64_t frame) {
  return std::any_of(s.events.begin(), s.events.end(), [&](const Event& e) {
    return e.kind == kind && e.active(frame);
  });
}

std::array<double, 2> CameraOffset(const Scenario& s, int64_t frame) {
  std::array<double, 2> off = {0.0, 0.0};
  for (const auto& e : s.events) {
    if (e.kind == EventKind::kCameraSwitch && e.active(frame)) {
      off[0] += e.dx;
      off[1] += e.dy;
    }
  }
  return off;
}

BBox PixelAlignedBox(const Trajectory& t, int64_t frame,
                     std::array<double, 2> offset) {
  const auto c = t.CenterAt(frame);
  const double w = std::max(1.0, std::round(t.w));
  const double h = std::max(1.0, std::round(t.h));
  return BBox{std::round(c[0] + offset[0] - 0.5 * w),
              std::round(c[1] + offset[1] - 0.5 * h), w, h};
}

void DrawChecker(Frame& f, const BBox& box, Rgb dark, Rgb light) {
  const int x0 = static_cast<int>(box.x);
  const int y0 = static_cast<int>(box.y);
  const int x1 = static_cast<int>(box.right());
  const int y1 = static_cast<int>(box.bottom());
  const int cell = std::max(2, static_cast<int>(std::lround(
                                   std::min(box.w, box.h) / 4.0)));
  for (int y = std::max(0, y0); y < std::min(f.height(), y1); ++y) {
    for (int x = std::max(0, x0); x < std::min(f.width(), x1); ++x) {
      const bool odd = (((x - x0) / cell) + ((y - y0) / cell)) % 2 != 0;
      f.set(x, y, odd ? light : dark);
    }
  }
}

// --- scenario document -----------------------------------------------------

double OptionalNumber(const nlohmann::json& j, const char* key, double dflt) {
  return j.contains(key) ? json_util::NumberField(j, key) : dflt;
}

Trajectory ParseTrajectory(const nlohmann::json& j, const char* what) {
  if (!j.is_object()) {
    throw ValidationError(std::string(what) + " must be an object");
  }
  Trajectory t;
  auto size = j.find("size");
  if (size == j.end() || !size->is_array() || size->size() != 2 ||
      !(*size)[0].is_number() || !(*size)[1].is_number()) {
    throw ValidationError(std::string(what) + ".size must be [w, h]");
  }
  t.w = (*size)[0].get<double>();
  t.h = (*size)[1].get<double>();
  auto wps = j.find("waypoints");
  if (wps == j.end() || !wps->is_array() || wps->empty()) {
    throw ValidationError(std::string(what) +
                          ".waypoints must be a non-empty list");
  }
  for (const auto& p : *wps) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_number() ||
        !p[1].is_number()) {
      throw ValidationError(std::string(what) + ": waypoint must be [x, y]");
    }
    t.waypoints.push_back({p[0].get<double>(), p[1].get<double>()});
  }
  const size_t segments = t.waypoints.size() - 1;
  if (auto speeds = j.find("speeds"); speeds != j.end()) {
    if (!speeds->is_array()) {
      throw ValidationError(std::string(what) + ".speeds must be a list");
    }
    for (const auto& v : *speeds) {
      if (!v.is_number()) {
        throw ValidationError(std::string(what) + ".speeds not numeric");
      }
      t.speeds.push_back(v.get<double>());
    }
  } else if (j.contains("speed")) {
    t.speeds.assign(segments, json_util::NumberField(j, "speed"));
  } else if (segments > 0) {
    throw ValidationError(std::string(what) + " needs speed or speeds");
  }
  if (auto similar = j.find("similar"); similar != j.end()) {
    if (!similar->is_boolean()) {
      throw ValidationError(std::string(what) + ".similar must be boolean");
    }
    t.similar = similar->get<bool>();
  }
  return t;
}

EventKind ParseEventKind(const std::string& kind) {
  if (kind == "camera_switch") return EventKind::kCameraSwitch;
  if (kind == "occlusion_partial") return EventKind::kOcclusionPartial;
  if (kind == "occlusion_total") return EventKind::kOcclusionTotal;
  if (kind == "out_of_frame") return EventKind::kOutOfFrame;
  if (kind == "blur") return EventKind::kBlur;
  throw ValidationError("unknown event kind '" + kind + "'");
}

Event ParseEvent(const nlohmann::json& j) {
  if (!j.is_object()) throw ValidationError("event must be an object");
  auto kind = j.find("kind");
  if (kind == j.end() || !kind->is_string()) {
    throw ValidationError("event needs a 'kind'");
  }
  Event e;
  e.kind = ParseEventKind(kind->get<std::string>());
  e.start_frame = json_util::IntegerField(j, "start");
  e.end_frame = json_util::IntegerField(j, "end");
  e.dx = OptionalNumber(j, "dx", 0.0);
  e.dy = OptionalNumber(j, "dy", 0.0);
  e.coverage = OptionalNumber(j, "coverage", 0.0);
  e.radius = j.contains("radius")
                 ? static_cast<int>(json_util::IntegerField(j, "radius"))
                 : 0;
  return e;
}

NoiseModel ParseNoise(const nlohmann::json& j) {
  if (!j.is_object()) throw ValidationError("noise must be an object");
  NoiseModel n;
  n.jitter_sigma = OptionalNumber(j, "jitter_sigma", n.jitter_sigma);
  n.size_sigma = OptionalNumber(j, "size_sigma", n.size_sigma);
  n.miss_prob = OptionalNumber(j, "miss_prob", n.miss_prob);
  n.false_positive_rate =
      OptionalNumber(j, "false_positive_rate", n.false_positive_rate);
  n.score_mean = OptionalNumber(j, "score_mean", n.score_mean);
  n.score_sigma = OptionalNumber(j, "score_sigma", n.score_sigma);
  if (auto lat = j.find("latency_ms"); lat != j.end()) {
    if (!lat->is_object()) {
      throw ValidationError("noise.latency_ms must be {global, roi}");
    }
    n.global_latency_ms = OptionalNumber(*lat, "global", 0.0);
    n.roi_latency_ms = OptionalNumber(*lat, "roi", 0.0);
  }
  return n;
}

void ValidateTrajectory(const Trajectory& t, const Scenario& s,
                        const std::string& what) {
  if (!(t.w >= 1.0 && t.h >= 1.0) || t.w > s.width || t.h > s.height) {
    throw ValidationError(what + ": size must be within the frame");
  }
  if (t.speeds.size() != t.waypoints.size() - 1) {
    throw ValidationError(what + ": need one speed per segment");
  }
  for (double v : t.speeds) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw ValidationError(what + ": speeds must be positive");
    }
  }
  for (const auto& p : t.waypoints) {
    if (!(p[0] >= 0.0 && p[0] <= s.width && p[1] >= 0.0 && p[1] <= s.height)) {
      throw ValidationError(what + ": waypoint outside the frame");
    }
  }
}

void CheckRatio(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw ValidationError(std::string(name) + " must be in [0, 1]");
  }
}

void CheckNonNegative(double v, const char* name) {
  if (!(v >= 0.0) || !std::isfinite(v)) {
    throw ValidationError(std::string(name) + " must be non-negative");
  }
}

}  // namespace

std::array<double, 2> Trajectory::CenterAt(int64_t frame) const {
  double remaining = static_cast<double>(std::max<int64_t>(0, frame));
  for (size_t i = 0; i + 1 < waypoints.size(); ++i) {
    const auto& a = waypoints[i];
    const auto& b = waypoints[i + 1];
    const double dx = b[0] - a[0];
    const double dy = b[1] - a[1];
    const double length = std::hypot(dx, dy);
    if (length == 0.0) continue;
    const double duration = length / speeds[i];
    if (remaining <= duration) {
      const double f = remaining / duration;
      return {a[0] + f * dx, a[1] + f * dy};
    }
    remaining -= duration;
  }
  return waypoints.back();
}

void Scenario::Validate() const {
  if (width < 16 || height < 16) {
    throw ValidationError("frame must be at least 16x16");
  }
  if (!(fps > 0.0)) throw ValidationError("fps must be positive");
  if (num_frames < 1) throw ValidationError("num_frames must be >= 1");
  ValidateTrajectory(target, *this, "target");
  for (size_t i = 0; i < distractors.size(); ++i) {
    ValidateTrajectory(distractors[i], *this,
                       "distractor " + std::to_string(i));
  }
  for (const auto& e : events) {
    if (e.start_frame < 0 || e.start_frame > e.end_frame ||
        e.end_frame >= num_frames) {
      throw ValidationError("event frames must satisfy 0 <= start <= end < " +
                            std::to_string(num_frames));
    }
    if (e.kind == EventKind::kOcclusionPartial) {
      CheckRatio(e.coverage, "occlusion coverage");
    }
    if (e.kind == EventKind::kBlur && e.radius < 1) {
      throw ValidationError("blur radius must be >= 1");
    }
  }
  CheckNonNegative(noise.jitter_sigma, "jitter_sigma");
  CheckNonNegative(noise.size_sigma, "size_sigma");
  CheckRatio(noise.miss_prob, "miss_prob");
  CheckNonNegative(noise.false_positive_rate, "false_positive_rate");
  CheckRatio(noise.score_mean, "score_mean");
  CheckNonNegative(noise.score_sigma, "score_sigma");
  CheckNonNegative(noise.global_latency_ms, "latency_ms.global");
  CheckNonNegative(noise.roi_latency_ms, "latency_ms.roi");
}

Scenario ParseScenario(std::istream& in) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("scenario: ") + e.what());
  }
  if (!j.is_object()) throw ValidationError("scenario must be an object");
  Scenario s;
  s.width = static_cast<int>(json_util::IntegerField(j, "width"));
  s.height = static_cast<int>(json_util::IntegerField(j, "height"));
  s.fps = OptionalNumber(j, "fps", s.fps);
  s.num_frames = json_util::IntegerField(j, "num_frames");
  if (j.contains("seed")) {
    const auto& seed = j["seed"];
    if (!seed.is_number_integer()) {
      throw ValidationError("seed must be an integer");
    }
    s.seed = seed.is_number_unsigned() ? seed.get<uint64_t>()
                                       : static_cast<uint64_t>(seed.get<int64_t>());
  }
  if (!j.contains("target")) throw ValidationError("scenario needs a target");
  s.target = ParseTrajectory(j["target"], "target");
  if (auto d = j.find("distractors"); d != j.end()) {
    if (!d->is_array()) throw ValidationError("distractors must be a list");
    for (const auto& item : *d) {
      s.distractors.push_back(ParseTrajectory(item, "distractor"));
    }
  }
  if (auto ev = j.find("events"); ev != j.end()) {
    if (!ev->is_array()) throw ValidationError("events must be a list");
    for (const auto& item : *ev) s.events.push_back(ParseEvent(item));
  }
  if (auto n = j.find("noise"); n != j.end()) s.noise = ParseNoise(*n);
  s.Validate();
  return s;
}

Scenario ReadScenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return ParseScenario(in);
}

std::optional<BBox> TargetBoxAt(const Scenario& s, int64_t frame) {
  if (AnyActive(s, EventKind::kOutOfFrame, frame)) return std::nullopt;
  return PixelAlignedBox(s.target, frame, CameraOffset(s, frame));
}

GroundTruthTrack GroundTruthFor(const Scenario& s) {
  GroundTruthTrack gt;
  gt.entries.reserve(static_cast<size_t>(s.num_frames));
  const BBox bounds{0.0, 0.0, static_cast<double>(s.width),
                    static_cast<double>(s.height)};
  for (int64_t f = 0; f < s.num_frames; ++f) {
    GroundTruthEntry e;
    e.frame = f;
    const auto box = TargetBoxAt(s, f);
    if (box && !AnyActive(s, EventKind::kOcclusionTotal, f)) {
      e.box = ClipTo(*box, bounds);
      e.visible = e.box.has_value();
    }
    if (!e.visible) e.box.reset();
    gt.entries.push_back(e);
  }
  return gt;
}

Frame BoxBlur(const Frame& frame, int radius) {
  if (radius <= 0) return frame;
  const int w = frame.width();
  const int h = frame.height();
  // Integer sums in both passes, one rounding at the end, so the result is
  // exactly the direct 2-D neighborhood mean.
  std::vector<uint32_t> rows(static_cast<size_t>(w) * h * 3);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      for (int c = 0; c < 3; ++c) {
        uint32_t sum = 0;
        for (int dx = -radius; dx <= radius; ++dx) {
          sum += frame.pixel(std::clamp(x + dx, 0, w - 1), y)[c];
        }
        rows[(static_cast<size_t>(y) * w + x) * 3 + c] = sum;
      }
    }
  }
  const uint32_t count = static_cast<uint32_t>((2 * radius + 1) * (2 * radius + 1));
  Frame out(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      uint8_t* p = out.pixel(x, y);
      for (int c = 0; c < 3; ++c) {
        uint32_t sum = 0;
        for (int dy = -radius; dy <= radius; ++dy) {
          const int yy = std::clamp(y + dy, 0, h - 1);
          sum += rows[(static_cast<size_t>(yy) * w + x) * 3 + c];
        }
        p[c] = static_cast<uint8_t>((sum + count / 2) / count);
      }
    }
  }
  return out;
}

Frame RenderFrame(const Scenario& s, int64_t frame) {
  Frame f(s.width, s.height, kBackground);
  const auto offset = CameraOffset(s, frame);
  for (const auto& d : s.distractors) {
    const BBox box = PixelAlignedBox(d, frame, offset);
    if (d.similar) {
      DrawChecker(f, box, kTargetDark, kTargetLight);
    } else {
      DrawChecker(f, box, kOtherDark, kOtherLight);
    }
  }
  if (const auto box = TargetBoxAt(s, frame)) {
    DrawChecker(f, *box, kTargetDark, kTargetLight);
    if (AnyActive(s, EventKind::kOcclusionTotal, frame)) {
      f.FillRect(*box, kOccluder);
    } else {
      double coverage = 0.0;
      for (const auto& e : s.events) {
        if (e.kind == EventKind::kOcclusionPartial && e.active(frame)) {
          coverage = std::max(coverage, e.coverage);
        }
      }
      if (coverage > 0.0) {
        f.FillRect(BBox{box->x, box->y, std::round(box->w * coverage), box->h},
                   kOccluder);
      }
    }
  }
  int blur = 0;
  for (const auto& e : s.events) {
    if (e.kind == EventKind::kBlur && e.active(frame)) {
      blur = std::max(blur, e.radius);
    }
  }
  return blur > 0 ? BoxBlur(f, blur) : f;
}

namespace {

struct RoleStreams {
  Rng miss;
  Rng jitter;
  Rng size;
  Rng score;
  Rng fp;

  RoleStreams(uint64_t seed, const std::string& role)
      : miss(Rng::Stream(seed, role + "/miss")),
        jitter(Rng::Stream(seed, role + "/jitter")),
        size(Rng::Stream(seed, role + "/size")),
        score(Rng::Stream(seed, role + "/score")),
        fp(Rng::Stream(seed, role + "/fp")) {}
};

double SampleScore(const NoiseModel& n, Rng& rng) {
  return std::clamp(n.score_mean + n.score_sigma * rng.Normal(), 0.0, 1.0);
}

DetectionScript SampleRole(const Scenario& s, const GroundTruthTrack& gt,
                           const std::string& role) {
  const NoiseModel& n = s.noise;
  const BBox bounds{0.0, 0.0, static_cast<double>(s.width),
                    static_cast<double>(s.height)};
  RoleStreams rng(s.seed, role);
  DetectionScript script;
  for (const auto& g : gt.entries) {
    std::vector<Detection> dets;
    // Fixed draw counts per frame keep every stream aligned with the frame
    // index whatever the outcome.
    const double miss_draw = rng.miss.Uniform();
    const double jx = rng.jitter.Normal();
    const double jy = rng.jitter.Normal();
    const double sw = rng.size.Normal();
    const double sh = rng.size.Normal();
    const double score = SampleScore(n, rng.score);
    const bool missed = !g.visible || miss_draw < n.miss_prob;
    if (!missed) {
      const BBox& t = *g.box;
      const BBox noisy = BBox::FromCenter(
          t.center_x() + n.jitter_sigma * jx, t.center_y() + n.jitter_sigma * jy,
          std::max(1.0, t.w + n.size_sigma * sw),
          std::max(1.0, t.h + n.size_sigma * sh));
      if (auto clipped = ClipTo(noisy, bounds)) {
        dets.push_back({*clipped, score});
      }
    }

    const int fp_count = rng.fp.Poisson(n.false_positive_rate);
    const auto offset = CameraOffset(s, g.frame);
    for (int k = 0; k < fp_count; ++k) {
      const bool near_distractor = rng.fp.Uniform() < 0.8;
      const double pick = rng.fp.Uniform();
      const double ux = rng.fp.Uniform();
      const double uy = rng.fp.Uniform();
      const double nx = rng.fp.Normal();
      const double ny = rng.fp.Normal();
      const double fp_score = SampleScore(n, rng.fp);
      double cx = ux * s.width;
      double cy = uy * s.height;
      if (near_distractor && !s.distractors.empty()) {
        const auto idx = std::min(
            s.distractors.size() - 1,
            static_cast<size_t>(pick * static_cast<double>(s.distractors.size())));
        const BBox d = PixelAlignedBox(s.distractors[idx], g.frame, offset);
        const double spread = std::max(2.0, n.jitter_sigma);
        cx = d.center_x() + spread * nx;
        cy = d.center_y() + spread * ny;
      }
      const BBox fp_box = BBox::FromCenter(cx, cy, std::round(s.target.w),
                                           std::round(s.target.h));
      if (auto clipped = ClipTo(fp_box, bounds)) {
        dets.push_back({*clipped, fp_score});
      }
    }
    if (!dets.empty()) script[g.frame] = std::move(dets);
  }
  return script;
}

void WriteScript(const std::filesystem::path& path,
                 const DetectionScript& script, int64_t frames) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  WriteDetectionScript(out, script, frames);
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace

DetectionStreams SampleDetections(const Scenario& scenario,
                                  const GroundTruthTrack& gt) {
  return {SampleRole(scenario, gt, "global"), SampleRole(scenario, gt, "roi")};
}

GeneratedBundle Generate(const Scenario& scenario,
                         const std::filesystem::path& out_dir) {
  scenario.Validate();
  GeneratedBundle b;
  b.root = out_dir;
  b.frames_dir = out_dir / "frames";
  b.ground_truth = out_dir / "gt.csv";
  b.global_detections = out_dir / "det_global.jsonl";
  b.roi_detections = out_dir / "det_roi.jsonl";
  b.meta = out_dir / "meta.json";

  std::error_code ec;
  std::filesystem::create_directories(b.frames_dir, ec);
  if (ec) {
    throw IoError("cannot create " + b.frames_dir.string() + ": " +
                  ec.message());
  }
  for (int64_t f = 0; f < scenario.num_frames; ++f) {
    WritePpm(b.frames_dir / FrameFileName(f), RenderFrame(scenario, f));
  }
  const auto gt = GroundTruthFor(scenario);
  WriteGroundTruth(b.ground_truth, gt);
  const auto streams = SampleDetections(scenario, gt);
  WriteScript(b.global_detections, streams.global, scenario.num_frames);
  WriteScript(b.roi_detections, streams.roi, scenario.num_frames);
  WriteBundleMeta(out_dir, BundleMeta{scenario.width, scenario.height,
                                      scenario.fps, scenario.num_frames});
  return b;
}

FrameInput ScenarioFrameSource::Load(int64_t index) {
  FrameInput in;
  in.index = index;
  in.image = std::make_shared<const Frame>(RenderFrame(scenario_, index));
  return in;
}

}  // namespace hytrack
