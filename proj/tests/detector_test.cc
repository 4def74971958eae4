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

#include <chrono>
#include <sstream>

#include <gtest/gtest.h>

#include "hytrack/detector.h"
#include "hytrack/errors.h"
#include "support/test_support.h"

namespace hytrack {
namespace {

using std::chrono::milliseconds;

DetectionQuery Query(int64_t frame, std::optional<BBox> roi = std::nullopt) {
  DetectionQuery q;
  q.frame_index = frame;
  q.roi = roi;
  return q;
}

TEST(ScriptedDetectorTest, ReplaysScriptedFrame) {
  DetectionScript script;
  script[7] = {{BBox{100, 200, 40, 80}, 0.9}};
  ScriptedDetector det(script);
  const auto out = det.Detect(Query(7));
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0], (Detection{BBox{100, 200, 40, 80}, 0.9}));
}

TEST(ScriptedDetectorTest, MissingFrameIsEmpty) {
  DetectionScript script;
  script[6] = {{BBox{1, 1, 4, 4}, 0.9}};
  ScriptedDetector det(script);
  EXPECT_TRUE(det.Detect(Query(7)).empty());
}

TEST(ScriptedDetectorTest, SortsByDescendingScore) {
  DetectionScript script;
  script[0] = {{BBox{0, 0, 4, 4}, 0.5},
               {BBox{10, 0, 4, 4}, 0.9},
               {BBox{20, 0, 4, 4}, 0.5}};
  ScriptedDetector det(script);
  const auto out = det.Detect(Query(0));
  ASSERT_EQ(out.size(), 3u);
  EXPECT_EQ(out[0].score, 0.9);
  EXPECT_EQ(out[1].box.x, 0);
  EXPECT_EQ(out[2].box.x, 20);
}

TEST(ScriptedDetectorTest, SimulatedLatencyIsAFloor) {
  DetectionScript script;
  ScriptedDetector det(script, milliseconds(45));
  const auto start = std::chrono::steady_clock::now();
  det.Detect(Query(0));
  const auto elapsed = std::chrono::steady_clock::now() - start;
  EXPECT_GE(elapsed, milliseconds(45));
}

TEST(ScriptedDetectorTest, RoiConfinesAndClips) {
  DetectionScript script;
  script[0] = {{BBox{10, 10, 20, 20}, 0.9},   // center (20, 20): kept, clipped
               {BBox{80, 80, 10, 10}, 0.8},   // center outside: dropped
               {BBox{30, 30, 10, 10}, 0.7}};  // fully inside: unchanged
  ScriptedDetector det(script);
  const auto out = det.Detect(Query(0, BBox{15, 15, 40, 40}));
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0].box, (BBox{15, 15, 15, 15}));
  EXPECT_EQ(out[1].box, (BBox{30, 30, 10, 10}));
}

TEST(BestDetectionTest, Examples) {
  const std::vector<Detection> two{{BBox{0, 0, 1, 1}, 0.9},
                                   {BBox{5, 5, 1, 1}, 0.7}};
  const auto best = BestDetection(two, 0.6);
  ASSERT_TRUE(best);
  EXPECT_EQ(best->score, 0.9);
  EXPECT_FALSE(BestDetection(std::vector<Detection>{{BBox{0, 0, 1, 1}, 0.5}},
                             0.6));
  EXPECT_FALSE(BestDetection(std::vector<Detection>{}, 0.6));
}

TEST(BestDetectionTest, FloorIsInclusiveAndEarliestWinsTies) {
  const std::vector<Detection> tie{{BBox{0, 0, 1, 1}, 0.6},
                                   {BBox{5, 5, 1, 1}, 0.6}};
  const auto best = BestDetection(tie, 0.6);
  ASSERT_TRUE(best);
  EXPECT_EQ(best->box.x, 0);
}

TEST(DetectionScriptTest, ParseWriteRoundTrip) {
  DetectionScript script;
  script[0] = {{BBox{1.5, 2, 3, 4}, 0.25}};
  script[2] = {{BBox{5, 6, 7, 8}, 1.0}, {BBox{9, 9, 1, 1}, 0.0}};
  std::ostringstream out;
  WriteDetectionScript(out, script, 3);
  std::istringstream in(out.str());
  const auto back = ParseDetectionScript(in);
  EXPECT_EQ(back.at(0), script.at(0));
  EXPECT_TRUE(back.at(1).empty());
  EXPECT_EQ(back.at(2), script.at(2));
}

TEST(DetectionScriptTest, RejectsBadLines) {
  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return ParseDetectionScript(in);
  };
  EXPECT_THROW(parse("not json\n"), ValidationError);
  EXPECT_THROW(parse(R"({"frame":0})" "\n"), ValidationError);
  EXPECT_THROW(
      parse(R"({"frame":0,"detections":[{"x":0,"y":0,"w":1,"h":1,"score":1.5}]})"
            "\n"),
      ValidationError);
  EXPECT_THROW(
      parse(R"({"frame":0,"detections":[{"x":0,"y":0,"w":0,"h":1,"score":0.5}]})"
            "\n"),
      ValidationError);
}

TEST(DetectorSpecTest, ParsesKinds) {
  auto s = ParseDetectorSpec("scripted:/tmp/a.jsonl");
  EXPECT_EQ(s.kind, DetectorKind::kScripted);
  EXPECT_EQ(s.source, "/tmp/a.jsonl");
  EXPECT_FALSE(s.simulated_latency);

  s = ParseDetectorSpec("scripted:/tmp/a.jsonl@45ms");
  EXPECT_EQ(s.source, "/tmp/a.jsonl");
  ASSERT_TRUE(s.simulated_latency);
  EXPECT_EQ(*s.simulated_latency, milliseconds(45));

  s = ParseDetectorSpec("exec:python3 sidecar.py --role roi");
  EXPECT_EQ(s.kind, DetectorKind::kSubprocess);
  EXPECT_EQ(s.source, "python3 sidecar.py --role roi");

  s = ParseDetectorSpec("tcp:localhost:9000");
  EXPECT_EQ(s.kind, DetectorKind::kTcp);
  EXPECT_EQ(s.source, "localhost:9000");
}

TEST(DetectorSpecTest, RejectsBadSpecs) {
  EXPECT_THROW(ParseDetectorSpec("nokind"), ValidationError);
  EXPECT_THROW(ParseDetectorSpec("scripted:"), ValidationError);
  EXPECT_THROW(ParseDetectorSpec("magic:x"), ValidationError);
  EXPECT_THROW(ParseDetectorSpec("tcp:hostonly"), ValidationError);
  EXPECT_THROW(ParseDetectorSpec("scripted:a.jsonl@-3ms"), ValidationError);
  EXPECT_THROW(MakeDetector(ParseDetectorSpec("tcp:localhost:notaport")),
               ValidationError);
}

TEST(DetectorSpecTest, MissingScriptFailsAtConstruction) {
  EXPECT_THROW(MakeDetector(ParseDetectorSpec("scripted:/nonexistent.jsonl")),
               IoError);
}

}  // namespace
}  // namespace hytrack
