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

#ifndef HYTRACK_ERRORS_H_
#define HYTRACK_ERRORS_H_

#include <stdexcept>
#include <string>

namespace hytrack {

// Invalid input: malformed file, bad configuration, out-of-range argument.
// The CLI maps this to exit code 2.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what)
      : std::invalid_argument(what) {}
};

// Filesystem or stream failure. The CLI maps this to exit code 1.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

// A remote detector could not be reached, timed out, or answered with
// something that is not a valid response. Distinct from "no detections".
class TransportError : public std::runtime_error {
 public:
  explicit TransportError(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace hytrack

#endif  // HYTRACK_ERRORS_H_
