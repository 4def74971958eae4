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

#include <fstream>

#include <gtest/gtest.h>

#include "hytrack/errors.h"
#include "hytrack/frame.h"
#include "hytrack/frame_source.h"
#include "support/test_support.h"

namespace hytrack {
namespace {

TEST(FrameTest, BufferMatchesSize) {
  Frame f(7, 5, Rgb{1, 2, 3});
  EXPECT_EQ(f.data().size(), 7u * 5u * 3u);
  EXPECT_EQ(f.at(6, 4), (Rgb{1, 2, 3}));
  EXPECT_THROW(Frame(2, 2, std::vector<uint8_t>(5, 0)), ValidationError);
}

TEST(FrameTest, FillRectRoundsEdgesAndClips) {
  Frame f(10, 10);
  f.FillRect({-2.0, 1.4, 4.6, 2.0}, {9, 9, 9});
  for (int y = 0; y < 10; ++y) {
    for (int x = 0; x < 10; ++x) {
      const bool inside = x < 3 && y >= 1 && y < 3;
      EXPECT_EQ(f.at(x, y)[0], inside ? 9 : 0) << x << "," << y;
    }
  }
}

TEST(PpmTest, RoundTrip) {
  testing::TempDir dir;
  const Frame f = testing::NoiseFrame(13, 9, 4);
  WritePpm(dir / "a.ppm", f);
  EXPECT_EQ(ReadPpm(dir / "a.ppm"), f);
}

TEST(PpmTest, RejectsBadFiles) {
  testing::TempDir dir;
  EXPECT_THROW(ReadPpm(dir / "missing.ppm"), IoError);
  {
    std::ofstream out(dir / "ascii.ppm");
    out << "P3\n1 1\n255\n0 0 0\n";
  }
  EXPECT_THROW(ReadPpm(dir / "ascii.ppm"), ValidationError);
  {
    std::ofstream out(dir / "short.ppm", std::ios::binary);
    out << "P6\n4 4\n255\n" << std::string(10, 'x');
  }
  EXPECT_THROW(ReadPpm(dir / "short.ppm"), ValidationError);
}

TEST(DirectoryFrameSourceTest, ReadsBundleOrFramesDir) {
  testing::TempDir dir;
  std::filesystem::create_directories(dir / "frames");
  for (int i = 0; i < 3; ++i) {
    WritePpm(dir.path() / "frames" / FrameFileName(i),
             testing::NoiseFrame(8, 6, i));
  }
  WriteBundleMeta(dir.path(), {8, 6, 30.0, 3});
  DirectoryFrameSource from_root(dir.path());
  DirectoryFrameSource from_frames(dir.path() / "frames");
  EXPECT_EQ(from_root.count(), 3);
  EXPECT_EQ(from_frames.count(), 3);
  const auto a = from_root.Load(2);
  EXPECT_EQ(a.index, 2);
  EXPECT_EQ(*a.image, testing::NoiseFrame(8, 6, 2));
  EXPECT_EQ(a.path.filename(), "frame_000002.ppm");
  EXPECT_EQ(*from_frames.Load(1).image, testing::NoiseFrame(8, 6, 1));
}

}  // namespace
}  // namespace hytrack
