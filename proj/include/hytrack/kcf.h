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

#ifndef HYTRACK_KCF_H_
#define HYTRACK_KCF_H_

#include <complex>
#include <vector>

#include "hytrack/bbox.h"
#include "hytrack/frame.h"

namespace hytrack {

// Kernelized correlation filter on grayscale raw-intensity features with a
// Gaussian kernel. Target size is fixed for the lifetime of a model; only the
// position is tracked.
struct KcfParams {
  // Search window side relative to the target side.
  double padding = 2.5;
  double lambda = 1e-4;
  // Gaussian kernel bandwidth.
  double sigma = 0.5;
  // Learning rate of the running model, in [0, 1].
  double interp_factor = 0.012;
  // Regression target bandwidth relative to the target extent on the grid.
  double output_sigma_factor = 0.125;
  // Upper bound on the working grid side. Smaller windows are sampled at one
  // cell per pixel.
  int template_side = 96;

  // Throws ValidationError when an invariant does not hold.
  void Validate() const;

  friend bool operator==(const KcfParams&, const KcfParams&) = default;
};

struct KcfModel {
  KcfParams params;
  double target_w = 0.0;
  double target_h = 0.0;
  double center_x = 0.0;
  double center_y = 0.0;
  // Working grid shape and the pixel extent it covers.
  int rows = 0;
  int cols = 0;
  double window_w = 0.0;
  double window_h = 0.0;
  // Dual coefficients in the frequency domain, rows * cols.
  std::vector<std::complex<double>> coefficients;
  // Windowed feature template, rows * cols.
  std::vector<double> feature_template;
  // Response of the model to its own latest training sample; always >= 0.
  double last_peak = 0.0;

  BBox box() const {
    return BBox::FromCenter(center_x, center_y, target_w, target_h);
  }
  // Region the next Locate call searches.
  BBox search_window() const {
    return BBox::FromCenter(center_x, center_y, window_w, window_h);
  }

  friend bool operator==(const KcfModel&, const KcfModel&) = default;
};

struct KcfLocation {
  BBox box;
  double peak = 0.0;
};

// Trains a fresh model on the padded window around `target`. Pixels outside
// the frame are taken from the nearest border pixel. Throws ValidationError
// if the target is invalid or lies entirely outside the frame.
KcfModel KcfInit(const Frame& frame, const BBox& target,
                 const KcfParams& params = {});

// Maximum-response position in `frame` around the model's center. The model
// is not modified; a weak match shows up as a low peak.
KcfLocation KcfLocate(const KcfModel& model, const Frame& frame);

// Blends a sample taken at `box` into the model:
//   new = (1 - interp_factor) * old + interp_factor * sample.
// The center moves to the box center; the target size is unchanged.
KcfModel KcfUpdate(KcfModel model, const Frame& frame, const BBox& box);

// Discards all learned state and trains anew at `box` with the same params.
KcfModel KcfReinit(const KcfModel& model, const Frame& frame, const BBox& box);

// Bilinear grayscale samples of a window_w x window_h region centered at
// (center_x, center_y) on a rows x cols grid, one sample per cell center.
// Coordinates outside the frame are clamped to the border (replication).
// Luma weights are 0.299 / 0.587 / 0.114 on the 0..255 scale.
std::vector<double> SampleWindow(const Frame& frame, double center_x,
                                 double center_y, double window_w,
                                 double window_h, int rows, int cols);

}  // namespace hytrack

#endif  // HYTRACK_KCF_H_
