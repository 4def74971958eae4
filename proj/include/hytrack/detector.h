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

#ifndef HYTRACK_DETECTOR_H_
#define HYTRACK_DETECTOR_H_

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hytrack/bbox.h"
#include "hytrack/frame.h"

namespace hytrack {

struct Detection {
  BBox box;
  double score = 0.0;  // [0, 1]

  friend bool operator==(const Detection&, const Detection&) = default;
};

struct DetectionQuery {
  int64_t frame_index = 0;
  // Either may be absent depending on what the detector needs: scripted
  // detectors need neither, remote ones need the image path.
  std::shared_ptr<const Frame> frame;
  std::filesystem::path image;
  std::optional<BBox> roi;
};

// A detector handle is used by one thread at a time.
class Detector {
 public:
  explicit Detector(std::optional<std::chrono::milliseconds> latency = {})
      : latency_(latency) {}
  virtual ~Detector() = default;
  Detector(const Detector&) = delete;
  Detector& operator=(const Detector&) = delete;

  // Detections sorted by descending score, in full-frame coordinates. With a
  // roi, every box is clipped to it and boxes centered outside it are
  // dropped. Blocks for at least the simulated latency when one is set.
  // Throws TransportError when the underlying source fails; an empty result
  // just means nothing was found.
  std::vector<Detection> Detect(const DetectionQuery& query);

  std::optional<std::chrono::milliseconds> simulated_latency() const {
    return latency_;
  }

 protected:
  // Raw detections in full-frame coordinates, any order.
  virtual std::vector<Detection> DetectRaw(const DetectionQuery& query) = 0;

 private:
  std::optional<std::chrono::milliseconds> latency_;
};

// Highest-scoring detection with score >= min_score; the earliest one wins a
// tie.
std::optional<Detection> BestDetection(std::span<const Detection> detections,
                                       double min_score);

// Drops boxes centered outside `roi` and clips the rest to it.
std::vector<Detection> ConfineToRoi(std::vector<Detection> detections,
                                    const BBox& roi);

// Replay of per-frame detections keyed by frame index.
using DetectionScript = std::map<int64_t, std::vector<Detection>>;

// One JSON object per line: {"frame":n,"detections":[{x,y,w,h,score}...]}.
// Lines must be sorted by frame; unknown keys are ignored.
DetectionScript ParseDetectionScript(std::istream& in);
DetectionScript ReadDetectionScript(const std::filesystem::path& path);
void WriteDetectionScript(std::ostream& out, const DetectionScript& script,
                          int64_t frame_count);

class ScriptedDetector : public Detector {
 public:
  explicit ScriptedDetector(
      DetectionScript script,
      std::optional<std::chrono::milliseconds> latency = {})
      : Detector(latency), script_(std::move(script)) {}

 protected:
  std::vector<Detection> DetectRaw(const DetectionQuery& query) override;

 private:
  DetectionScript script_;
};

enum class DetectorKind { kScripted, kSubprocess, kTcp };

struct DetectorSpec {
  DetectorKind kind = DetectorKind::kScripted;
  // File path, shell command line, or host:port.
  std::string source;
  std::optional<std::chrono::milliseconds> simulated_latency;
};

// `scripted:<path>[@<n>ms]`, `exec:<command line>`, `tcp:<host:port>`.
// Throws ValidationError on anything else.
DetectorSpec ParseDetectorSpec(const std::string& text);

// Resolves the source (loads the file, starts the process, connects).
std::unique_ptr<Detector> MakeDetector(const DetectorSpec& spec);

}  // namespace hytrack

#endif  // HYTRACK_DETECTOR_H_
