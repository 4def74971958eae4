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

#ifndef HYTRACK_TRACK_OUTPUT_H_
#define HYTRACK_TRACK_OUTPUT_H_

#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "hytrack/metrics.h"
#include "hytrack/pipeline.h"

namespace hytrack {

// One JSON object per line:
//   {"frame":n,"x":..,"y":..,"w":..,"h":..,"source":"global|kcf|none",
//    "phase":"...","ms":{"global":..,"roi":..,"kcf":..,"total":..}}
// Box fields are omitted when source is "none". With `with_timings` false
// the "ms" object is left out, which makes synchronous runs byte-identical.
void WriteTrackOutputs(std::ostream& out, std::span<const TrackOutput> outputs,
                       bool with_timings = true);
void WriteTrackOutputs(const std::filesystem::path& path,
                       std::span<const TrackOutput> outputs,
                       bool with_timings = true);

struct TrackFile {
  std::vector<TrackOutput> outputs;
  // False when no line carried an "ms" object.
  bool has_timings = false;
};

// Throws ValidationError on malformed lines or non-increasing frames.
TrackFile ParseTrackOutputs(std::istream& in);
TrackFile ReadTrackOutputs(const std::filesystem::path& path);

PredictedTrack ToPredictedTrack(std::span<const TrackOutput> outputs);

}  // namespace hytrack

#endif  // HYTRACK_TRACK_OUTPUT_H_
