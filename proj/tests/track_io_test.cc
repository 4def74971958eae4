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

#include <sstream>

#include <gtest/gtest.h>

#include "hytrack/errors.h"
#include "hytrack/track_io.h"
#include "support/test_support.h"

namespace hytrack {
namespace {

GroundTruthTrack ParseGt(const std::string& text) {
  std::istringstream in(text);
  return ParseGroundTruth(in);
}

PredictedTrack ParsePred(const std::string& text) {
  std::istringstream in(text);
  return ParsePredictions(in);
}

TEST(GroundTruthCsvTest, ParsesVisibleAndInvisibleRows) {
  const auto gt = ParseGt("0,10,20,30,40,1\n1,0,0,0,0,0\n\n2,11,21,30,40,1\r\n");
  ASSERT_EQ(gt.entries.size(), 3u);
  EXPECT_TRUE(gt.entries[0].visible);
  EXPECT_EQ(*gt.entries[0].box, (BBox{10, 20, 30, 40}));
  EXPECT_FALSE(gt.entries[1].visible);
  EXPECT_FALSE(gt.entries[1].box);
  EXPECT_EQ(gt.entries[2].frame, 2);
}

TEST(GroundTruthCsvTest, RejectsMalformedRows) {
  EXPECT_THROW(ParseGt("0,1,2,3,4\n"), ValidationError);
  EXPECT_THROW(ParseGt("0,1,2,3,4,2\n"), ValidationError);
  EXPECT_THROW(ParseGt("0,1,2,0,4,1\n"), ValidationError);
  EXPECT_THROW(ParseGt("0,1.5,2,3,4,1\n"), ValidationError);
  EXPECT_THROW(ParseGt("0,,2,3,4,1\n"), ValidationError);
  EXPECT_THROW(ParseGt("0, 1,2,3,4,1\n"), ValidationError);
  EXPECT_THROW(ParseGt("1,1,2,3,4,1\n1,1,2,3,4,1\n"), ValidationError);
  EXPECT_THROW(ParseGt("-1,1,2,3,4,1\n"), ValidationError);
}

TEST(GroundTruthCsvTest, RoundTrip) {
  GroundTruthTrack gt;
  gt.entries.push_back({0, BBox{1, 2, 3, 4}, true});
  gt.entries.push_back({3, std::nullopt, false});
  gt.entries.push_back({4, BBox{5, 6, 7, 8}, true});
  std::ostringstream out;
  WriteGroundTruth(out, gt);
  EXPECT_EQ(out.str(), "0,1,2,3,4,1\n3,0,0,0,0,0\n4,5,6,7,8,1\n");
  const auto back = ParseGt(out.str());
  ASSERT_EQ(back.entries.size(), 3u);
  for (size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(back.entries[i].frame, gt.entries[i].frame);
    EXPECT_EQ(back.entries[i].visible, gt.entries[i].visible);
    EXPECT_EQ(back.entries[i].box, gt.entries[i].box);
  }
}

TEST(PredictionCsvTest, ParsesAndRejects) {
  const auto pred = ParsePred("0,1,2,3,4\n5,6,7,8,9\n");
  ASSERT_EQ(pred.entries.size(), 2u);
  EXPECT_EQ(*pred.entries[1].box, (BBox{6, 7, 8, 9}));
  EXPECT_THROW(ParsePred("0,1,2,3,4,1\n"), ValidationError);
  EXPECT_THROW(ParsePred("0,1,2,3,-4\n"), ValidationError);
  EXPECT_THROW(ParsePred("2,1,2,3,4\n1,1,2,3,4\n"), ValidationError);
}

TEST(PredictionCsvTest, WriteRoundsAndSkipsAbsent) {
  PredictedTrack pred;
  pred.entries.push_back({0, BBox{1.4, 2.6, 3.5, 0.2}});
  pred.entries.push_back({1, std::nullopt});
  std::ostringstream out;
  WritePredictions(out, pred);
  EXPECT_EQ(out.str(), "0,1,3,4,1\n");
}

TEST(TrackIoFileTest, MissingFileIsIoError) {
  EXPECT_THROW(ReadGroundTruth("/nonexistent/gt.csv"), IoError);
  EXPECT_THROW(ReadPredictions("/nonexistent/pred.csv"), IoError);
}

TEST(TrackIoFileTest, FileRoundTrip) {
  testing::TempDir dir;
  GroundTruthTrack gt;
  gt.entries.push_back({7, BBox{1, 1, 2, 2}, true});
  WriteGroundTruth(dir / "gt.csv", gt);
  const auto back = ReadGroundTruth(dir / "gt.csv");
  ASSERT_EQ(back.entries.size(), 1u);
  EXPECT_EQ(back.entries[0].frame, 7);
}

}  // namespace
}  // namespace hytrack
