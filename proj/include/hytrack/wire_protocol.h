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

#ifndef HYTRACK_WIRE_PROTOCOL_H_
#define HYTRACK_WIRE_PROTOCOL_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hytrack/detector.h"

namespace hytrack {

// Newline-delimited JSON messages between the tracker and a detection
// service. Boxes in a response are relative to the request's roi when one
// was given.
struct DetectionRequest {
  int64_t id = 0;
  int64_t frame = 0;
  std::string image;
  std::optional<BBox> roi;

  friend bool operator==(const DetectionRequest&,
                         const DetectionRequest&) = default;
};

struct DetectionResponse {
  int64_t id = 0;
  std::vector<Detection> detections;
  // Set when the service rejected the request.
  std::optional<std::string> error;

  friend bool operator==(const DetectionResponse&,
                         const DetectionResponse&) = default;
};

// Encoders return a single line without the trailing newline.
std::string EncodeRequest(const DetectionRequest& request);
std::string EncodeResponse(const DetectionResponse& response);

// Decoders throw ValidationError on malformed input.
DetectionRequest DecodeRequest(std::string_view line);
DetectionResponse DecodeResponse(std::string_view line);

}  // namespace hytrack

#endif  // HYTRACK_WIRE_PROTOCOL_H_
