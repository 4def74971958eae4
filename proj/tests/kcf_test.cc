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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "hytrack/errors.h"
#include "hytrack/kcf.h"
#include "hytrack/scenario.h"
#include "support/test_support.h"

namespace hytrack {
namespace {

constexpr Rgb kGrass{46, 120, 52};
constexpr Rgb kRed{200, 30, 40};
constexpr Rgb kWhite{235, 235, 235};

Frame CheckerFrame(int w, int h, const BBox& target, int cell = 8) {
  Frame f(w, h, kGrass);
  testing::PaintChecker(f, target, cell, kRed, kWhite);
  return f;
}

// Crop of `big` with its top-left corner at (ox, oy).
Frame Crop(const Frame& big, int ox, int oy, int w, int h) {
  Frame f(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) f.set(x, y, big.at(x + ox, y + oy));
  }
  return f;
}

double CenterDistance(const BBox& a, const BBox& b) {
  return std::hypot(a.center_x() - b.center_x(), a.center_y() - b.center_y());
}

TEST(KcfParamsTest, Validation) {
  EXPECT_NO_THROW(KcfParams{}.Validate());
  KcfParams p;
  p.padding = 1.0;
  EXPECT_THROW(p.Validate(), ValidationError);
  p = {};
  p.lambda = 0.0;
  EXPECT_THROW(p.Validate(), ValidationError);
  p = {};
  p.interp_factor = 1.5;
  EXPECT_THROW(p.Validate(), ValidationError);
}

TEST(KcfInitTest, Bookkeeping) {
  const BBox target{100, 60, 64, 64};
  const Frame f = CheckerFrame(320, 240, target);
  const KcfModel m = KcfInit(f, target);
  EXPECT_EQ(m.target_w, 64);
  EXPECT_EQ(m.target_h, 64);
  EXPECT_EQ(m.center_x, 132);
  EXPECT_EQ(m.center_y, 92);
  EXPECT_EQ(m.box(), target);
  EXPECT_EQ(m.coefficients.size(), static_cast<size_t>(m.rows * m.cols));
  EXPECT_EQ(m.feature_template.size(), m.coefficients.size());
  EXPECT_GE(m.last_peak, 0.0);
}

TEST(KcfInitTest, RejectsDegeneratePlacement) {
  const Frame f(50, 50, kGrass);
  EXPECT_THROW(KcfInit(f, {10, 10, 0, 5}), ValidationError);
  EXPECT_THROW(KcfInit(f, {60, 60, 10, 10}), ValidationError);
  EXPECT_THROW(KcfInit(Frame(), {0, 0, 5, 5}), ValidationError);
}

TEST(KcfLocateTest, StationarySelfDetection) {
  const BBox target{100, 60, 64, 64};
  const Frame f = CheckerFrame(320, 240, target);
  const KcfModel m = KcfInit(f, target);
  const auto loc = KcfLocate(m, f);
  EXPECT_LE(CenterDistance(loc.box, target), 1.0);
  EXPECT_GT(loc.peak, 0.5);
}

TEST(KcfLocateTest, StationaryOverTenFrames) {
  const BBox target{120, 80, 32, 24};
  const Frame f = CheckerFrame(320, 240, target, 6);
  KcfModel m = KcfInit(f, target);
  for (int i = 0; i < 10; ++i) {
    const auto loc = KcfLocate(m, f);
    EXPECT_LE(CenterDistance(loc.box, target), 1.0) << i;
    m = KcfUpdate(std::move(m), f, loc.box);
  }
}

TEST(KcfLocateTest, FollowsTwoPixelsPerFrame) {
  const Scenario s =
      testing::LinearScenario(320, 240, 40, 32, 24, 60, 120, 2.0, 0.0);
  Frame prev = RenderFrame(s, 0);
  KcfModel m = KcfInit(prev, *TargetBoxAt(s, 0));
  double last_cx = m.center_x;
  for (int64_t i = 1; i < s.num_frames; ++i) {
    const Frame f = RenderFrame(s, i);
    const auto loc = KcfLocate(m, f);
    const double step = loc.box.center_x() - last_cx;
    EXPECT_NEAR(step, 2.0, 1.0) << "frame " << i;
    EXPECT_LE(CenterDistance(loc.box, *TargetBoxAt(s, i)), 2.0);
    last_cx = loc.box.center_x();
    m = KcfUpdate(std::move(m), f, loc.box);
  }
}

TEST(KcfLocateTest, OcclusionDropsPeakBelowFloor) {
  Scenario s = testing::LinearScenario(320, 240, 20, 32, 24, 160, 120, 0, 0);
  s.events.push_back({EventKind::kOcclusionTotal, 10, 19});
  const Frame clear = RenderFrame(s, 0);
  KcfModel m = KcfInit(clear, *TargetBoxAt(s, 0));
  const double floor = 0.25;
  EXPECT_GE(KcfLocate(m, clear).peak, floor);
  EXPECT_LT(KcfLocate(m, RenderFrame(s, 10)).peak, floor);
}

TEST(KcfUpdateTest, ZeroInterpKeepsLearnedArrays) {
  const BBox target{100, 60, 40, 40};
  const Frame f = CheckerFrame(320, 240, target);
  KcfParams p;
  p.interp_factor = 0.0;
  const KcfModel m = KcfInit(f, target, p);
  const Frame other = testing::NoiseFrame(320, 240, 5);
  const KcfModel u = KcfUpdate(m, other, {104, 62, 40, 40});
  EXPECT_EQ(u.coefficients, m.coefficients);
  EXPECT_EQ(u.feature_template, m.feature_template);
}

TEST(KcfUpdateTest, FullInterpEqualsFreshInit) {
  const BBox target{100, 60, 40, 40};
  const Frame f = CheckerFrame(320, 240, target);
  KcfParams p;
  p.interp_factor = 1.0;
  const KcfModel m = KcfInit(f, target, p);
  const Frame other = testing::NoiseFrame(320, 240, 6);
  const BBox moved{110, 70, 40, 40};
  EXPECT_EQ(KcfUpdate(m, other, moved), KcfInit(other, moved, p));
}

TEST(KcfUpdateTest, ConvergesOnStaticFrame) {
  const BBox target{140, 100, 32, 32};
  const Frame f = CheckerFrame(320, 240, target);
  KcfParams p;
  p.interp_factor = 0.02;
  KcfModel m = KcfInit(f, target, p);
  double last_peak = KcfLocate(m, f).peak;
  for (int i = 0; i < 50; ++i) {
    const auto loc = KcfLocate(m, f);
    EXPECT_GE(loc.peak, last_peak - 1e-9) << i;
    EXPECT_LE(CenterDistance(loc.box, target), 1.0);
    last_peak = loc.peak;
    m = KcfUpdate(std::move(m), f, loc.box);
  }
}

TEST(KcfReinitTest, MatchesInitAndRelocatesThere) {
  const BBox first{40, 40, 32, 32};
  const BBox second{200, 120, 32, 32};
  Frame f = CheckerFrame(320, 240, first);
  testing::PaintChecker(f, second, 8, kRed, kWhite);
  KcfParams p;
  p.interp_factor = 0.3;
  const KcfModel m = KcfInit(f, first, p);
  const KcfModel r = KcfReinit(m, f, second);
  EXPECT_EQ(r, KcfInit(f, second, p));
  EXPECT_LE(CenterDistance(KcfLocate(r, f).box, second), 1.0);
}

// Border replication: sampling near the edge equals sampling the same spot
// in an explicitly padded copy of the image.
TEST(SampleWindowTest, MatchesPaddedImageOracle) {
  const Frame f = testing::NoiseFrame(40, 30, 9);
  const int pad = 50;
  Frame padded(40 + 2 * pad, 30 + 2 * pad);
  for (int y = 0; y < padded.height(); ++y) {
    for (int x = 0; x < padded.width(); ++x) {
      const int sx = std::clamp(x - pad, 0, 39);
      const int sy = std::clamp(y - pad, 0, 29);
      padded.set(x, y, f.at(sx, sy));
    }
  }
  std::mt19937_64 gen(2);
  std::uniform_real_distribution<double> c(-10.0, 50.0);
  for (int trial = 0; trial < 50; ++trial) {
    const double cx = c(gen);
    const double cy = c(gen);
    const auto direct = SampleWindow(f, cx, cy, 37.0, 23.0, 19, 29);
    const auto oracle =
        SampleWindow(padded, cx + pad, cy + pad, 37.0, 23.0, 19, 29);
    ASSERT_EQ(direct.size(), oracle.size());
    for (size_t i = 0; i < direct.size(); ++i) {
      ASSERT_NEAR(direct[i], oracle[i], 1e-9) << trial << ":" << i;
    }
  }
}

TEST(KcfInitTest, AcceptsTargetHalfOutsideFrame) {
  const Frame f = testing::NoiseFrame(200, 150, 10);
  const BBox target{-16, 40, 32, 32};
  const KcfModel m = KcfInit(f, target);
  EXPECT_EQ(m.box(), target);
  EXPECT_LE(CenterDistance(KcfLocate(m, f).box, target), 1.0);
}

TEST(KcfPropertyTest, TranslationEquivariance) {
  const Frame big = testing::NoiseFrame(260, 220, 21);
  const Frame base = Crop(big, 30, 30, 200, 160);
  const BBox target{84, 68, 24, 24};
  const KcfModel m = KcfInit(base, target);
  std::mt19937_64 gen(4);
  std::uniform_int_distribution<int> d(-6, 6);
  for (int trial = 0; trial < 20; ++trial) {
    const int dx = d(gen);
    const int dy = d(gen);
    // Moving the crop origin by -d shifts the content by +d.
    const Frame shifted = Crop(big, 30 - dx, 30 - dy, 200, 160);
    const auto loc = KcfLocate(m, shifted);
    EXPECT_NEAR(loc.box.center_x() - m.center_x, dx, 1.0) << trial;
    EXPECT_NEAR(loc.box.center_y() - m.center_y, dy, 1.0) << trial;
  }
}

TEST(KcfPropertyTest, DeterministicAndBounded) {
  std::mt19937_64 gen(8);
  std::uniform_real_distribution<double> pos(0.0, 150.0);
  std::uniform_real_distribution<double> size(6.0, 60.0);
  for (int trial = 0; trial < 15; ++trial) {
    const Frame f = testing::NoiseFrame(200, 200, trial);
    const Frame g = testing::NoiseFrame(200, 200, 100 + trial);
    const BBox box{pos(gen), pos(gen), size(gen), size(gen)};
    const KcfModel a = KcfInit(f, box);
    const KcfModel b = KcfInit(f, box);
    EXPECT_EQ(a, b);
    const auto la = KcfLocate(a, g);
    const auto lb = KcfLocate(b, g);
    EXPECT_EQ(la.box, lb.box);
    EXPECT_EQ(la.peak, lb.peak);
    EXPECT_GE(la.peak, 0.0);
    EXPECT_TRUE(std::isfinite(la.peak));
    // The new center always lies inside the search window.
    const BBox window = a.search_window();
    EXPECT_GE(la.box.center_x(), window.x);
    EXPECT_LE(la.box.center_x(), window.right());
    EXPECT_GE(la.box.center_y(), window.y);
    EXPECT_LE(la.box.center_y(), window.bottom());
    EXPECT_EQ(la.box.w, box.w);
    EXPECT_EQ(la.box.h, box.h);
  }
}

}  // namespace
}  // namespace hytrack
