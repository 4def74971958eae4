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

#ifndef HYTRACK_BBOX_H_
#define HYTRACK_BBOX_H_

#include <optional>

namespace hytrack {

// Axis-aligned rectangle in pixel coordinates. (x, y) is the top-left
// corner. Treated as a closed real-valued rectangle with area w * h.
struct BBox {
  double x = 0.0;
  double y = 0.0;
  double w = 0.0;
  double h = 0.0;

  double area() const { return w * h; }
  double right() const { return x + w; }
  double bottom() const { return y + h; }
  double center_x() const { return x + 0.5 * w; }
  double center_y() const { return y + 0.5 * h; }

  // Finite coordinates and strictly positive extent.
  bool valid() const;

  static BBox FromCenter(double cx, double cy, double w, double h) {
    return BBox{cx - 0.5 * w, cy - 0.5 * h, w, h};
  }

  friend bool operator==(const BBox&, const BBox&) = default;
};

// Intersection-over-union of two valid boxes, in [0, 1]. Symmetric, exactly 1
// for identical boxes and 0 for disjoint ones.
double Iou(const BBox& a, const BBox& b);

// Overlapping region, or nullopt when the interiors do not meet.
std::optional<BBox> Intersection(const BBox& a, const BBox& b);

// True when the two boxes share interior area.
bool Intersects(const BBox& a, const BBox& b);

// Clips `box` to `bounds`; nullopt when nothing is left.
std::optional<BBox> ClipTo(const BBox& box, const BBox& bounds);

// Square of side `scale * max(w, h)` centered on `box`, clipped to `bounds`
// (aspect is not preserved by the clip).
std::optional<BBox> SquareCrop(const BBox& box, double scale,
                               const BBox& bounds);

}  // namespace hytrack

#endif  // HYTRACK_BBOX_H_
