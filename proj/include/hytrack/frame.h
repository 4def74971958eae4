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

#ifndef HYTRACK_FRAME_H_
#define HYTRACK_FRAME_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <vector>

#include "hytrack/bbox.h"

namespace hytrack {

using Rgb = std::array<uint8_t, 3>;

// Row-major 8-bit RGB image. pixels.size() == width * height * 3.
class Frame {
 public:
  Frame() = default;
  Frame(int width, int height, Rgb fill = {0, 0, 0});
  // Takes ownership of an existing buffer; throws ValidationError on a size
  // mismatch.
  Frame(int width, int height, std::vector<uint8_t> pixels);

  int width() const { return width_; }
  int height() const { return height_; }
  bool empty() const { return width_ == 0 || height_ == 0; }
  BBox bounds() const {
    return BBox{0.0, 0.0, static_cast<double>(width_),
                static_cast<double>(height_)};
  }

  const uint8_t* pixel(int x, int y) const {
    return pixels_.data() + (static_cast<size_t>(y) * width_ + x) * 3;
  }
  uint8_t* pixel(int x, int y) {
    return pixels_.data() + (static_cast<size_t>(y) * width_ + x) * 3;
  }
  void set(int x, int y, Rgb c) {
    uint8_t* p = pixel(x, y);
    p[0] = c[0];
    p[1] = c[1];
    p[2] = c[2];
  }
  Rgb at(int x, int y) const {
    const uint8_t* p = pixel(x, y);
    return {p[0], p[1], p[2]};
  }

  const std::vector<uint8_t>& data() const { return pixels_; }
  std::vector<uint8_t>& data() { return pixels_; }

  // Fills the integer pixel rectangle covered by `box`, clipped to the frame.
  void FillRect(const BBox& box, Rgb color);

  friend bool operator==(const Frame&, const Frame&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<uint8_t> pixels_;
};

// Binary P6 PPM with maxval 255.
Frame ReadPpm(const std::filesystem::path& path);
void WritePpm(const std::filesystem::path& path, const Frame& frame);

}  // namespace hytrack

#endif  // HYTRACK_FRAME_H_
