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
#include <sstream>

#include <gtest/gtest.h>

#include "hytrack/commands.h"
#include "hytrack/eval.h"
#include "hytrack/scenario.h"
#include "hytrack/track_io.h"
#include "hytrack/track_output.h"
#include "support/test_support.h"

namespace hytrack {
namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult Cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = RunCli(args, out, err);
  return {code, out.str(), err.str()};
}

void WriteText(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

constexpr const char* kLinearScenario = R"({
  "width": 240, "height": 180, "num_frames": 60, "seed": 3,
  "target": {"size": [24, 20], "waypoints": [[40, 90], [158, 90]],
             "speed": 2.0}
})";

constexpr const char* kOccludedScenario = R"({
  "width": 240, "height": 180, "num_frames": 70, "seed": 3,
  "target": {"size": [24, 20], "waypoints": [[60, 90], [198, 90]],
             "speed": 2.0},
  "events": [{"kind": "occlusion_total", "start": 50, "end": 69}]
})";

class CliTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = new testing::TempDir();
    WriteText(*dir_ / "linear.json", kLinearScenario);
    WriteText(*dir_ / "occluded.json", kOccludedScenario);
    ASSERT_EQ(Cli({"simulate", "--scenario", Path("linear.json"), "--out",
                   Path("linear")})
                  .code,
              kExitOk);
    ASSERT_EQ(Cli({"simulate", "--scenario", Path("occluded.json"), "--out",
                   Path("occluded")})
                  .code,
              kExitOk);
  }
  static void TearDownTestSuite() {
    delete dir_;
    dir_ = nullptr;
  }
  static std::string Path(const std::string& name) {
    return (*dir_ / name).string();
  }
  static std::string Global(const std::string& bundle) {
    return "scripted:" + Path(bundle + "/det_global.jsonl");
  }
  static std::string Roi(const std::string& bundle) {
    return "scripted:" + Path(bundle + "/det_roi.jsonl");
  }

  static testing::TempDir* dir_;
};

testing::TempDir* CliTest::dir_ = nullptr;

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(Cli({}).code, kExitUsage);
  EXPECT_EQ(Cli({"fly"}).code, kExitUsage);
  const auto r = Cli({"track", "--bogus"});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("Usage"), std::string::npos);
  EXPECT_EQ(Cli({"--help"}).code, kExitOk);
  EXPECT_EQ(Cli({"track", "--help"}).code, kExitOk);
}

TEST_F(CliTest, SimulateMissingScenario) {
  const auto r = Cli({"simulate", "--scenario", Path("missing.json"), "--out",
                      Path("never")});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_FALSE(r.err.empty());
}

TEST_F(CliTest, SimulateInvalidScenario) {
  WriteText(*dir_ / "bad.json", R"({"width": 10})");
  EXPECT_EQ(Cli({"simulate", "--scenario", Path("bad.json"), "--out",
                 Path("bad")})
                .code,
            kExitUsage);
}

TEST_F(CliTest, SimulateSameSeedTwice) {
  ASSERT_EQ(Cli({"simulate", "--scenario", Path("linear.json"), "--out",
                 Path("again"), "--seed", "3"})
                .code,
            kExitOk);
  for (const char* f : {"gt.csv", "det_global.jsonl", "det_roi.jsonl",
                        "frames/frame_000017.ppm"}) {
    EXPECT_EQ(testing::ReadFile(Path(std::string("linear/") + f)),
              testing::ReadFile(Path(std::string("again/") + f)))
        << f;
  }
}

TEST_F(CliTest, TrackRejectsBadSpecs) {
  const std::string out = Path("t.jsonl");
  EXPECT_EQ(Cli({"track", "--frames", Path("linear"), "--global", "magic:x",
                 "--out", out})
                .code,
            kExitUsage);
  EXPECT_EQ(Cli({"track", "--frames", Path("linear"), "--global",
                 Global("linear"), "--jump", "0", "--out", out})
                .code,
            kExitUsage);
  EXPECT_EQ(Cli({"track", "--frames", Path("linear"), "--global",
                 Global("linear"), "--mode", "eager", "--out", out})
                .code,
            kExitUsage);
  EXPECT_EQ(Cli({"track", "--frames", Path("linear"), "--global",
                 "tcp:127.0.0.1:1", "--out", out})
                .code,
            kExitUsage);
  EXPECT_EQ(Cli({"track", "--frames", Path("nowhere"), "--global",
                 Global("linear"), "--out", out})
                .code,
            kExitRuntime);
}

TEST_F(CliTest, TrackNoiselessBundleScoresPerfectSuccess) {
  const auto r = Cli({"track", "--frames", Path("linear"), "--global",
                      Global("linear"), "--roi", Roi("linear"), "--jump", "3",
                      "--out", Path("noiseless.jsonl"), "--pred-csv",
                      Path("noiseless.csv")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("frames=60"), std::string::npos);
  const auto e = Cli({"evaluate", "--pred", Path("noiseless.jsonl"), "--gt",
                      Path("linear/gt.csv"), "--report", Path("r.json")});
  ASSERT_EQ(e.code, kExitOk) << e.err;
  std::ifstream in(Path("r.json"));
  const EvalReport report = ParseReportJson(in);
  EXPECT_EQ(report.success_at_05, 1.0);
  EXPECT_EQ(report.frame_count, 60);
  EXPECT_GT(report.avg_fps, 0.0);
  const auto c = Cli({"evaluate", "--pred", Path("noiseless.csv"), "--gt",
                      Path("linear/gt.csv"), "--report", Path("r.csv"),
                      "--format", "csv"});
  ASSERT_EQ(c.code, kExitOk) << c.err;
  EXPECT_EQ(testing::ReadFile(Path("r.csv")).rfind("row,t,rate", 0), 0u);
}

TEST_F(CliTest, TrackSynchronousRunsAreByteIdentical) {
  for (const char* name : {"a.jsonl", "b.jsonl"}) {
    ASSERT_EQ(Cli({"track", "--frames", Path("linear"), "--global",
                   Global("linear"), "--roi", Roi("linear"), "--out",
                   Path(name), "--no-timings"})
                  .code,
              kExitOk);
  }
  const std::string a = testing::ReadFile(Path("a.jsonl"));
  EXPECT_FALSE(a.empty());
  EXPECT_EQ(a, testing::ReadFile(Path("b.jsonl")));
  EXPECT_EQ(a.find("\"ms\""), std::string::npos);
}

TEST_F(CliTest, PipelinedSlowGlobalKeepsCadence) {
  const auto r =
      Cli({"track", "--frames", Path("linear"), "--global",
           Global("linear") + "@45ms", "--roi", Roi("linear"), "--jump", "1",
           "--mode", "pipelined", "--out", Path("pipelined.jsonl")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const TrackFile file = ReadTrackOutputs(Path("pipelined.jsonl"));
  ASSERT_EQ(file.outputs.size(), 60u);
  for (const auto& o : file.outputs) EXPECT_LT(o.timings.total_ms, 45.0);
}

TEST_F(CliTest, TrackSurvivesFailingRemoteDetector) {
  const auto r = Cli({"track", "--frames", Path("linear"), "--global",
                      "exec:" + std::string(HYTRACK_FAKE_DETECTOR) + " garbage",
                      "--out", Path("failing.jsonl")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.err.find("failed"), std::string::npos);
  const TrackFile file = ReadTrackOutputs(Path("failing.jsonl"));
  ASSERT_EQ(file.outputs.size(), 60u);
  EXPECT_EQ(file.outputs[0].failures, std::vector<std::string>{"global"});
}

TEST_F(CliTest, TrackWithRemoteDetectorOverSubprocess) {
  const auto r = Cli({"track", "--frames", Path("linear"), "--global",
                      "exec:" + std::string(HYTRACK_FAKE_DETECTOR) + " ok",
                      "--out", Path("remote.jsonl")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const TrackFile file = ReadTrackOutputs(Path("remote.jsonl"));
  ASSERT_FALSE(file.outputs.empty());
  EXPECT_EQ(file.outputs[0].source, Source::kGlobal);
  EXPECT_EQ(*file.outputs[0].box, testing::FakeDetectionBox());
}

TEST_F(CliTest, EvaluateFormatViolations) {
  WriteText(*dir_ / "broken.csv", "0,1,2\n");
  EXPECT_EQ(Cli({"evaluate", "--pred", Path("broken.csv"), "--gt",
                 Path("linear/gt.csv")})
                .code,
            kExitUsage);
  EXPECT_EQ(Cli({"evaluate", "--pred", Path("linear/gt.csv"), "--gt",
                 Path("linear/gt.csv"), "--format", "xml"})
                .code,
            kExitUsage);
  EXPECT_EQ(Cli({"evaluate", "--pred", Path("absent.csv"), "--gt",
                 Path("linear/gt.csv")})
                .code,
            kExitRuntime);
}

TEST_F(CliTest, LabelRejectsBadInit) {
  EXPECT_EQ(Cli({"label", "--frames", Path("linear"), "--init", "1,2,3",
                 "--out", Path("l.csv")})
                .code,
            kExitUsage);
  EXPECT_EQ(Cli({"label", "--frames", Path("linear"), "--init",
                 "230,10,30,30", "--out", Path("l.csv")})
                .code,
            kExitUsage);
  EXPECT_EQ(Cli({"label", "--frames", Path("linear"), "--init", "10,10,0,5",
                 "--out", Path("l.csv")})
                .code,
            kExitUsage);
}

std::string InitOf(const GroundTruthTrack& gt) {
  const BBox b = *gt.entries[0].box;
  std::ostringstream s;
  s << b.x << ',' << b.y << ',' << b.w << ',' << b.h;
  return s.str();
}

TEST_F(CliTest, LabelFollowsNoiselessMotion) {
  const auto gt = ReadGroundTruth(Path("linear/gt.csv"));
  const auto r = Cli({"label", "--frames", Path("linear"), "--init",
                      InitOf(gt), "--out", Path("labels.csv")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto labels = ReadGroundTruth(Path("labels.csv"));
  ASSERT_EQ(labels.entries.size(), gt.entries.size());
  for (size_t i = 0; i < gt.entries.size(); ++i) {
    const BBox a = *labels.entries[i].box;
    const BBox b = *gt.entries[i].box;
    EXPECT_LE(std::abs(a.x - b.x), 2.0) << i;
    EXPECT_LE(std::abs(a.y - b.y), 2.0) << i;
  }
}

TEST_F(CliTest, LabelStopsAtTotalOcclusion) {
  const auto gt = ReadGroundTruth(Path("occluded/gt.csv"));
  const auto r = Cli({"label", "--frames", Path("occluded"), "--init",
                      InitOf(gt), "--out", Path("occ.csv")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto labels = ReadGroundTruth(Path("occ.csv"));
  const int64_t stop = static_cast<int64_t>(labels.entries.size());
  EXPECT_GE(stop, 50);
  EXPECT_LE(stop, 53);
  EXPECT_NE(r.out.find("stopped at frame"), std::string::npos);

  const auto never = Cli({"label", "--frames", Path("occluded"), "--init",
                          InitOf(gt), "--out", Path("occ0.csv"),
                          "--stop-peak", "0"});
  ASSERT_EQ(never.code, kExitOk);
  EXPECT_EQ(ReadGroundTruth(Path("occ0.csv")).entries.size(), 70u);
}

TEST_F(CliTest, BenchPrintsOneRowPerSetting) {
  const auto r = Cli({"bench", "--frames", Path("linear"), "--gt",
                      Path("linear/gt.csv"), "--global", Global("linear"),
                      "--roi", Roi("linear"), "--jumps", "3,10", "--crops",
                      "2,4", "--out-dir", Path("bench")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  std::istringstream lines(r.out);
  std::string line;
  int rows = 0;
  while (std::getline(lines, line)) ++rows;
  EXPECT_EQ(rows, 1 + 4);
  EXPECT_TRUE(std::filesystem::exists(Path("bench/report_j10_c4.json")));
  EXPECT_EQ(Cli({"bench", "--frames", Path("linear"), "--gt",
                 Path("linear/gt.csv"), "--global", Global("linear"),
                 "--jumps", "0"})
                .code,
            kExitUsage);
}

TEST(CliBinaryTest, ExitCodesFromProcess) {
  const std::string cli = HYTRACK_CLI;
  EXPECT_EQ(testing::RunCommand(cli + " --help > /dev/null"), 0);
  EXPECT_EQ(testing::RunCommand(cli + " > /dev/null 2>&1"), 2);
  EXPECT_EQ(testing::RunCommand(cli +
                                " simulate --scenario /nonexistent.json "
                                "--out /tmp/never > /dev/null 2>&1"),
            2);
}

TEST(CliBinaryTest, SampleScenariosParse) {
  for (const auto& entry : std::filesystem::directory_iterator(
           std::filesystem::path(HYTRACK_SOURCE_DIR) / "scenarios")) {
    EXPECT_NO_THROW(ReadScenario(entry.path())) << entry.path();
  }
}

}  // namespace
}  // namespace hytrack
