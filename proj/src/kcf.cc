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

#include "hytrack/kcf.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fft.h"
#include "hytrack/errors.h"

namespace hytrack {

namespace {

using fft::Complex;

int GridSide(double window_extent, int template_side) {
  const auto side = static_cast<int>(std::lround(window_extent));
  return std::clamp(side, 4, template_side);
}

std::vector<double> HannWindow(int rows, int cols) {
  auto hann = [](int n) {
    std::vector<double> w(n);
    for (int i = 0; i < n; ++i) {
      w[i] = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * i / (n - 1)));
    }
    return w;
  };
  const auto wr = hann(rows);
  const auto wc = hann(cols);
  std::vector<double> out(static_cast<size_t>(rows) * cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) out[r * cols + c] = wr[r] * wc[c];
  }
  return out;
}

// Wrapped offset of grid index i from the origin: 0, 1, ..., then negative.
int WrappedOffset(int i, int n) { return i < (n + 1) / 2 ? i : i - n; }

std::vector<Complex> ToSpectrum(const std::vector<double>& spatial, int rows,
                                int cols) {
  std::vector<Complex> out(spatial.begin(), spatial.end());
  fft::Forward2d(out, rows, cols);
  return out;
}

// Gaussian regression target with its peak at grid origin (wrapped), in the
// frequency domain.
std::vector<Complex> LabelSpectrum(const KcfModel& m) {
  const double sigma = m.params.output_sigma_factor *
                       std::sqrt(static_cast<double>(m.rows) * m.cols) /
                       m.params.padding;
  const double denom = 2.0 * sigma * sigma;
  std::vector<double> y(static_cast<size_t>(m.rows) * m.cols);
  for (int r = 0; r < m.rows; ++r) {
    const int dr = WrappedOffset(r, m.rows);
    for (int c = 0; c < m.cols; ++c) {
      const int dc = WrappedOffset(c, m.cols);
      y[r * m.cols + c] = std::exp(-(dr * dr + dc * dc) / denom);
    }
  }
  return ToSpectrum(y, m.rows, m.cols);
}

// Mean-subtracted, Hann-weighted intensities scaled to [0, 1].
std::vector<double> Features(const KcfModel& m, const Frame& frame, double cx,
                             double cy) {
  auto x = SampleWindow(frame, cx, cy, m.window_w, m.window_h, m.rows, m.cols);
  double mean = 0.0;
  for (double& v : x) {
    v /= 255.0;
    mean += v;
  }
  mean /= static_cast<double>(x.size());
  const auto hann = HannWindow(m.rows, m.cols);
  for (size_t i = 0; i < x.size(); ++i) x[i] = (x[i] - mean) * hann[i];
  return x;
}

double SquaredNorm(const std::vector<double>& v) {
  double s = 0.0;
  for (double e : v) s += e * e;
  return s;
}

// Gaussian kernel between every cyclic shift of `x` and `z`, returned as a
// spectrum. xx / zz are the squared norms of the spatial signals.
std::vector<Complex> GaussianCorrelation(const std::vector<Complex>& xf,
                                         double xx,
                                         const std::vector<Complex>& zf,
                                         double zz, const KcfModel& m) {
  const size_t n = xf.size();
  std::vector<Complex> k(n);
  for (size_t i = 0; i < n; ++i) k[i] = xf[i] * std::conj(zf[i]);
  fft::Inverse2d(k, m.rows, m.cols);
  const double inv_sigma2 = 1.0 / (m.params.sigma * m.params.sigma);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (size_t i = 0; i < n; ++i) {
    const double d = std::max(0.0, (xx + zz - 2.0 * k[i].real()) * inv_n);
    k[i] = Complex(std::exp(-d * inv_sigma2), 0.0);
  }
  fft::Forward2d(k, m.rows, m.cols);
  return k;
}

struct Response {
  std::vector<double> values;
  int peak_row = 0;
  int peak_col = 0;
  double peak = 0.0;
};

Response Detect(const KcfModel& m, const std::vector<double>& z) {
  const auto zf = ToSpectrum(z, m.rows, m.cols);
  const auto xf = ToSpectrum(m.feature_template, m.rows, m.cols);
  auto kzf = GaussianCorrelation(zf, SquaredNorm(z), xf,
                                 SquaredNorm(m.feature_template), m);
  for (size_t i = 0; i < kzf.size(); ++i) kzf[i] *= m.coefficients[i];
  fft::Inverse2d(kzf, m.rows, m.cols);

  Response out;
  out.values.resize(kzf.size());
  double best = -std::numeric_limits<double>::infinity();
  // Row-major scan with strict '>' keeps the smallest row, then column.
  for (int r = 0; r < m.rows; ++r) {
    for (int c = 0; c < m.cols; ++c) {
      const double v = kzf[r * m.cols + c].real();
      out.values[r * m.cols + c] = v;
      if (v > best) {
        best = v;
        out.peak_row = r;
        out.peak_col = c;
      }
    }
  }
  out.peak = std::max(0.0, best);
  return out;
}

std::vector<Complex> TrainCoefficients(const KcfModel& m,
                                       const std::vector<double>& x) {
  const auto xf = ToSpectrum(x, m.rows, m.cols);
  const double xx = SquaredNorm(x);
  auto alphaf = LabelSpectrum(m);
  const auto kf = GaussianCorrelation(xf, xx, xf, xx, m);
  for (size_t i = 0; i < alphaf.size(); ++i) {
    alphaf[i] /= kf[i] + m.params.lambda;
  }
  return alphaf;
}

void CheckPlacement(const Frame& frame, const BBox& box) {
  if (frame.empty()) throw ValidationError("KCF needs a non-empty frame");
  if (!box.valid()) throw ValidationError("KCF box must have positive size");
  if (!Intersects(box, frame.bounds())) {
    throw ValidationError("KCF box lies entirely outside the frame");
  }
}

}  // namespace

void KcfParams::Validate() const {
  if (!(padding > 1.0)) throw ValidationError("KCF padding must exceed 1");
  if (!(lambda > 0.0)) throw ValidationError("KCF lambda must be positive");
  if (!(sigma > 0.0)) throw ValidationError("KCF sigma must be positive");
  if (!(interp_factor >= 0.0 && interp_factor <= 1.0)) {
    throw ValidationError("KCF interp_factor must be in [0, 1]");
  }
  if (!(output_sigma_factor > 0.0)) {
    throw ValidationError("KCF output_sigma_factor must be positive");
  }
  if (template_side < 4) throw ValidationError("KCF template_side below 4");
}

std::vector<double> SampleWindow(const Frame& frame, double center_x,
                                 double center_y, double window_w,
                                 double window_h, int rows, int cols) {
  std::vector<double> out(static_cast<size_t>(rows) * cols);
  const double cell_w = window_w / cols;
  const double cell_h = window_h / rows;
  const double left = center_x - 0.5 * window_w;
  const double top = center_y - 0.5 * window_h;
  const int max_x = frame.width() - 1;
  const int max_y = frame.height() - 1;
  auto luma = [&](int x, int y) {
    const uint8_t* p = frame.pixel(x, y);
    return 0.299 * p[0] + 0.587 * p[1] + 0.114 * p[2];
  };
  for (int r = 0; r < rows; ++r) {
    // Pixel centers sit at integer + 0.5 in continuous coordinates.
    const double sy = top + (r + 0.5) * cell_h - 0.5;
    const double fy0 = std::floor(sy);
    const double wy = sy - fy0;
    const int y0 = std::clamp(static_cast<int>(fy0), 0, max_y);
    const int y1 = std::clamp(static_cast<int>(fy0) + 1, 0, max_y);
    for (int c = 0; c < cols; ++c) {
      const double sx = left + (c + 0.5) * cell_w - 0.5;
      const double fx0 = std::floor(sx);
      const double wx = sx - fx0;
      const int x0 = std::clamp(static_cast<int>(fx0), 0, max_x);
      const int x1 = std::clamp(static_cast<int>(fx0) + 1, 0, max_x);
      const double top_row = (1.0 - wx) * luma(x0, y0) + wx * luma(x1, y0);
      const double bottom_row = (1.0 - wx) * luma(x0, y1) + wx * luma(x1, y1);
      out[r * cols + c] = (1.0 - wy) * top_row + wy * bottom_row;
    }
  }
  return out;
}

KcfModel KcfInit(const Frame& frame, const BBox& target,
                 const KcfParams& params) {
  params.Validate();
  CheckPlacement(frame, target);
  KcfModel m;
  m.params = params;
  m.target_w = target.w;
  m.target_h = target.h;
  m.center_x = target.center_x();
  m.center_y = target.center_y();
  m.window_w = target.w * params.padding;
  m.window_h = target.h * params.padding;
  m.cols = GridSide(m.window_w, params.template_side);
  m.rows = GridSide(m.window_h, params.template_side);
  m.feature_template = Features(m, frame, m.center_x, m.center_y);
  m.coefficients = TrainCoefficients(m, m.feature_template);
  m.last_peak = Detect(m, m.feature_template).peak;
  return m;
}

KcfLocation KcfLocate(const KcfModel& model, const Frame& frame) {
  if (frame.empty()) throw ValidationError("KCF needs a non-empty frame");
  const auto z = Features(model, frame, model.center_x, model.center_y);
  const Response resp = Detect(model, z);
  const double cell_w = model.window_w / model.cols;
  const double cell_h = model.window_h / model.rows;
  const double cx =
      model.center_x + WrappedOffset(resp.peak_col, model.cols) * cell_w;
  const double cy =
      model.center_y + WrappedOffset(resp.peak_row, model.rows) * cell_h;
  return {BBox::FromCenter(cx, cy, model.target_w, model.target_h), resp.peak};
}

KcfModel KcfUpdate(KcfModel model, const Frame& frame, const BBox& box) {
  CheckPlacement(frame, box);
  model.center_x = box.center_x();
  model.center_y = box.center_y();
  const auto x = Features(model, frame, model.center_x, model.center_y);
  const auto alphaf = TrainCoefficients(model, x);
  const double keep = 1.0 - model.params.interp_factor;
  const double take = model.params.interp_factor;
  for (size_t i = 0; i < x.size(); ++i) {
    model.coefficients[i] = keep * model.coefficients[i] + take * alphaf[i];
    model.feature_template[i] = keep * model.feature_template[i] + take * x[i];
  }
  model.last_peak = Detect(model, x).peak;
  return model;
}

KcfModel KcfReinit(const KcfModel& model, const Frame& frame,
                   const BBox& box) {
  return KcfInit(frame, box, model.params);
}

}  // namespace hytrack
