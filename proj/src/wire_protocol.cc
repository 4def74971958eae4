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

#include "hytrack/wire_protocol.h"

#include <cmath>

#include "hytrack/errors.h"
#include "json_util.h"

namespace hytrack {

namespace json_util {

double NumberField(const nlohmann::json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_number()) {
    throw ValidationError(std::string("missing numeric field '") + key + "'");
  }
  const double v = it->get<double>();
  if (!std::isfinite(v)) {
    throw ValidationError(std::string("non-finite field '") + key + "'");
  }
  return v;
}

int64_t IntegerField(const nlohmann::json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_number_integer()) {
    throw ValidationError(std::string("missing integer field '") + key + "'");
  }
  return it->get<int64_t>();
}

Detection ParseDetection(const nlohmann::json& obj) {
  if (!obj.is_object()) throw ValidationError("detection must be an object");
  Detection d;
  d.box = BBox{NumberField(obj, "x"), NumberField(obj, "y"),
               NumberField(obj, "w"), NumberField(obj, "h")};
  d.score = NumberField(obj, "score");
  if (!d.box.valid()) throw ValidationError("detection box must be positive");
  if (d.score < 0.0 || d.score > 1.0) {
    throw ValidationError("detection score outside [0, 1]");
  }
  return d;
}

OrderedJson DetectionToJson(const Detection& d) {
  OrderedJson j;
  j["x"] = d.box.x;
  j["y"] = d.box.y;
  j["w"] = d.box.w;
  j["h"] = d.box.h;
  j["score"] = d.score;
  return j;
}

nlohmann::json ParseLine(std::string_view line, const char* what) {
  try {
    auto j = nlohmann::json::parse(line);
    if (!j.is_object()) throw ValidationError(std::string(what) + ": not an object");
    return j;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string(what) + ": " + e.what());
  }
}

}  // namespace json_util

using json_util::OrderedJson;

std::string EncodeRequest(const DetectionRequest& request) {
  OrderedJson j;
  j["id"] = request.id;
  j["frame"] = request.frame;
  j["image"] = request.image;
  if (request.roi) {
    j["roi"] = {request.roi->x, request.roi->y, request.roi->w, request.roi->h};
  } else {
    j["roi"] = nullptr;
  }
  return j.dump();
}

DetectionRequest DecodeRequest(std::string_view line) {
  const auto j = json_util::ParseLine(line, "request");
  DetectionRequest r;
  r.id = json_util::IntegerField(j, "id");
  r.frame = json_util::IntegerField(j, "frame");
  auto image = j.find("image");
  if (image == j.end() || !image->is_string()) {
    throw ValidationError("request: missing 'image'");
  }
  r.image = image->get<std::string>();
  auto roi = j.find("roi");
  if (roi != j.end() && !roi->is_null()) {
    if (!roi->is_array() || roi->size() != 4) {
      throw ValidationError("request: roi must be [x,y,w,h] or null");
    }
    for (const auto& v : *roi) {
      if (!v.is_number()) throw ValidationError("request: roi not numeric");
    }
    r.roi = BBox{(*roi)[0].get<double>(), (*roi)[1].get<double>(),
                 (*roi)[2].get<double>(), (*roi)[3].get<double>()};
    if (!r.roi->valid()) throw ValidationError("request: roi must be positive");
  }
  return r;
}

std::string EncodeResponse(const DetectionResponse& response) {
  OrderedJson j;
  j["id"] = response.id;
  if (response.error) {
    j["error"] = *response.error;
    return j.dump();
  }
  j["detections"] = OrderedJson::array();
  for (const auto& d : response.detections) {
    j["detections"].push_back(json_util::DetectionToJson(d));
  }
  return j.dump();
}

DetectionResponse DecodeResponse(std::string_view line) {
  const auto j = json_util::ParseLine(line, "response");
  DetectionResponse r;
  r.id = json_util::IntegerField(j, "id");
  auto error = j.find("error");
  if (error != j.end() && !error->is_null()) {
    r.error = error->is_string() ? error->get<std::string>() : error->dump();
    return r;
  }
  auto dets = j.find("detections");
  if (dets == j.end() || !dets->is_array()) {
    throw ValidationError("response: missing 'detections' array");
  }
  for (const auto& d : *dets) r.detections.push_back(json_util::ParseDetection(d));
  return r;
}

}  // namespace hytrack
