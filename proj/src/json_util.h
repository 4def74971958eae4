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

#ifndef HYTRACK_SRC_JSON_UTIL_H_
#define HYTRACK_SRC_JSON_UTIL_H_

#include <string>

#include "hytrack/detector.h"
#include "json.hpp"

namespace hytrack::json_util {

using OrderedJson = nlohmann::ordered_json;

// Reads a finite number; throws ValidationError naming `key` otherwise.
double NumberField(const nlohmann::json& obj, const char* key);
int64_t IntegerField(const nlohmann::json& obj, const char* key);

// {"x":..,"y":..,"w":..,"h":..,"score":..}; validates box and score range.
Detection ParseDetection(const nlohmann::json& obj);
OrderedJson DetectionToJson(const Detection& d);

nlohmann::json ParseLine(std::string_view line, const char* what);

}  // namespace hytrack::json_util

#endif  // HYTRACK_SRC_JSON_UTIL_H_
