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

#include "hytrack/bbox.h"

#include <algorithm>
#include <cmath>

namespace hytrack {

bool BBox::valid() const {
  return std::isfinite(x) && std::isfinite(y) && std::isfinite(w) &&
         std::isfinite(h) && w > 0.0 && h > 0.0;
}

std::optional<BBox> Intersection(const BBox& a, const BBox& b) {
  const double left = std::max(a.x, b.x);
  const double top = std::max(a.y, b.y);
  const double right = std::min(a.right(), b.right());
  const double bottom = std::min(a.bottom(), b.bottom());
  if (right <= left || bottom <= top) return std::nullopt;
  return BBox{left, top, right - left, bottom - top};
}

bool Intersects(const BBox& a, const BBox& b) {
  return Intersection(a, b).has_value();
}

double Iou(const BBox& a, const BBox& b) {
  if (a == b) return 1.0;
  const auto inter = Intersection(a, b);
  if (!inter) return 0.0;
  const double inter_area = inter->area();
  const double union_area = a.area() + b.area() - inter_area;
  return std::clamp(inter_area / union_area, 0.0, 1.0);
}

std::optional<BBox> ClipTo(const BBox& box, const BBox& bounds) {
  return Intersection(box, bounds);
}

std::optional<BBox> SquareCrop(const BBox& box, double scale,
                               const BBox& bounds) {
  const double side = scale * std::max(box.w, box.h);
  return ClipTo(BBox::FromCenter(box.center_x(), box.center_y(), side, side),
                bounds);
}

}  // namespace hytrack
