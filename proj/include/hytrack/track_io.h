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

#ifndef HYTRACK_TRACK_IO_H_
#define HYTRACK_TRACK_IO_H_

#include <filesystem>
#include <iosfwd>
#include <string>

#include "hytrack/metrics.h"

namespace hytrack {

// Ground-truth CSV: `frame,x,y,w,h,visible` per line, base-10 integers, no
// header. Throws ValidationError with a line number on any format violation.
GroundTruthTrack ParseGroundTruth(std::istream& in);
GroundTruthTrack ReadGroundTruth(const std::filesystem::path& path);

// Writes integer-valued boxes; invisible frames carry zeros.
void WriteGroundTruth(std::ostream& out, const GroundTruthTrack& gt);
void WriteGroundTruth(const std::filesystem::path& path,
                      const GroundTruthTrack& gt);

// Prediction CSV: `frame,x,y,w,h`; frames without a prediction are absent.
PredictedTrack ParsePredictions(std::istream& in);
PredictedTrack ReadPredictions(const std::filesystem::path& path);

// Boxes are rounded to the nearest integer; entries without a box are
// skipped.
void WritePredictions(std::ostream& out, const PredictedTrack& pred);

}  // namespace hytrack

#endif  // HYTRACK_TRACK_IO_H_
