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

#include "hytrack/commands.h"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "hytrack/errors.h"
#include "hytrack/eval.h"
#include "hytrack/frame_source.h"
#include "hytrack/kcf.h"
#include "hytrack/pipeline.h"
#include "hytrack/scenario.h"
#include "hytrack/track_io.h"
#include "hytrack/track_output.h"

namespace hytrack {

namespace {

struct SimulateArgs {
  std::string scenario;
  std::string out;
  std::optional<uint64_t> seed;
};

struct TrackArgs {
  std::string frames;
  std::string global;
  std::string roi;
  int jump = 3;
  double crop = 3.0;
  std::string mode = "sync";
  std::string out;
  std::string pred_csv;
  bool no_timings = false;
  bool no_kcf = false;
};

struct EvaluateArgs {
  std::string pred;
  std::string gt;
  std::string report;
  std::string format = "json";
};

struct LabelArgs {
  std::string frames;
  std::string init;
  std::string out;
  double stop_peak = 0.25;
};

struct BenchArgs {
  std::string frames;
  std::string gt;
  std::string global;
  std::string roi;
  std::vector<int> jumps = {3, 6, 10, 30};
  std::vector<double> crops = {2.0, 3.0, 4.0};
  std::string mode = "sync";
  std::string out_dir;
};

PipelineMode ParseMode(const std::string& text) {
  if (text == "sync" || text == "synchronous") return PipelineMode::kSynchronous;
  if (text == "pipelined") return PipelineMode::kPipelined;
  throw ValidationError("mode must be sync or pipelined");
}

BBox ParseBoxArg(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    double v = 0.0;
    auto [end, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc() || end != item.data() + item.size()) {
      throw ValidationError("box must be x,y,w,h: " + text);
    }
    values.push_back(v);
  }
  if (values.size() != 4) throw ValidationError("box must be x,y,w,h: " + text);
  BBox box{values[0], values[1], values[2], values[3]};
  if (!box.valid()) throw ValidationError("box needs positive size: " + text);
  return box;
}

std::string Fixed(double v, int digits) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v;
  return os.str();
}

struct RunSummary {
  std::vector<TrackOutput> outputs;
  double mean_ms = 0.0;
};

// Builds the pipeline for one configuration and runs it over a frame dir.
// Detector construction failures are usage errors.
RunSummary TrackFrames(const std::string& frames_dir, const std::string& global,
                       const std::string& roi, FusionConfig config) {
  std::unique_ptr<Detector> global_det;
  std::unique_ptr<Detector> roi_det;
  try {
    global_det = MakeDetector(ParseDetectorSpec(global));
    if (config.use_roi_detector) roi_det = MakeDetector(ParseDetectorSpec(roi));
  } catch (const TransportError& e) {
    throw ValidationError(std::string("detector unavailable: ") + e.what());
  } catch (const IoError& e) {
    throw ValidationError(std::string("detector unavailable: ") + e.what());
  }
  DirectoryFrameSource frames(frames_dir);
  Pipeline pipeline(std::move(config), std::move(global_det),
                    std::move(roi_det));
  RunSummary summary;
  summary.outputs = pipeline.Run(frames);
  double total = 0.0;
  for (const auto& o : summary.outputs) total += o.timings.total_ms;
  if (!summary.outputs.empty()) {
    summary.mean_ms = total / static_cast<double>(summary.outputs.size());
  }
  return summary;
}

int CmdSimulate(const SimulateArgs& a, std::ostream& out) {
  if (!std::filesystem::exists(a.scenario)) {
    throw ValidationError("scenario file not found: " + a.scenario);
  }
  Scenario scenario;
  try {
    scenario = ReadScenario(a.scenario);
  } catch (const IoError& e) {
    throw ValidationError(e.what());
  }
  if (a.seed) scenario.seed = *a.seed;
  const auto bundle = Generate(scenario, a.out);
  out << "wrote " << scenario.num_frames << " frames to "
      << bundle.root.string() << '\n';
  return kExitOk;
}

int CmdTrack(const TrackArgs& a, std::ostream& out, std::ostream& err) {
  FusionConfig config;
  config.jump = a.jump;
  config.crop_scale = a.crop;
  config.mode = ParseMode(a.mode);
  config.use_kcf = !a.no_kcf;
  config.use_roi_detector = !a.no_kcf && !a.roi.empty();
  const auto summary = TrackFrames(a.frames, a.global, a.roi, config);
  WriteTrackOutputs(a.out, summary.outputs, !a.no_timings);
  if (!a.pred_csv.empty()) {
    std::ofstream csv(a.pred_csv, std::ios::binary);
    if (!csv) throw IoError("cannot write " + a.pred_csv);
    WritePredictions(csv, ToPredictedTrack(summary.outputs));
  }
  size_t failures = 0;
  for (const auto& o : summary.outputs) failures += o.failures.size();
  if (failures > 0) {
    err << "warning: " << failures << " detector call(s) failed\n";
  }
  const double fps = summary.mean_ms > 0.0 ? 1000.0 / summary.mean_ms : 0.0;
  out << "frames=" << summary.outputs.size()
      << " mean_ms=" << Fixed(summary.mean_ms, 3) << " fps=" << Fixed(fps, 1)
      << '\n';
  return kExitOk;
}

TrackOutput OutputFromBox(int64_t frame, std::optional<BBox> box) {
  TrackOutput o;
  o.frame_index = frame;
  o.box = box;
  o.source = box ? Source::kKcf : Source::kNone;
  o.phase = box ? Phase::kTracking : Phase::kLost;
  return o;
}

// Accepts a track-output file (JSON lines), a prediction CSV, or a
// ground-truth style CSV such as the one written by `label`.
TrackFile LoadPredictionFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::string first_line;
  while (std::getline(in, first_line) && first_line.empty()) {
  }
  in.clear();
  in.seekg(0);
  TrackFile file;
  if (!first_line.empty() && first_line.front() == '{') {
    return ParseTrackOutputs(in);
  }
  if (std::count(first_line.begin(), first_line.end(), ',') == 5) {
    for (const auto& e : ParseGroundTruth(in).entries) {
      file.outputs.push_back(OutputFromBox(
          e.frame, e.visible ? e.box : std::optional<BBox>()));
    }
    return file;
  }
  for (const auto& e : ParsePredictions(in).entries) {
    file.outputs.push_back(OutputFromBox(e.frame, e.box));
  }
  return file;
}

int CmdEvaluate(const EvaluateArgs& a, std::ostream& out) {
  const auto format = ParseReportFormat(a.format);
  const TrackFile pred = LoadPredictionFile(a.pred);
  const GroundTruthTrack gt = ReadGroundTruth(a.gt);
  const EvalReport report =
      Evaluate(pred.outputs, gt, DefaultThresholds(), pred.has_timings);
  if (!a.report.empty()) WriteReport(a.report, report, format);
  out << "avg_overlap=" << Fixed(report.avg_overlap, 4)
      << " auc=" << Fixed(report.auc, 4)
      << " success_at_05=" << Fixed(report.success_at_05, 4)
      << " fps=" << Fixed(report.avg_fps, 2)
      << " lost_frames=" << report.lost_frames << '\n';
  return kExitOk;
}

int CmdLabel(const LabelArgs& a, std::ostream& out) {
  const BBox init = ParseBoxArg(a.init);
  if (a.stop_peak < 0.0) throw ValidationError("--stop-peak must be >= 0");
  DirectoryFrameSource frames(a.frames);
  if (frames.count() == 0) throw ValidationError("no frames to label");
  const FrameInput first = frames.Load(0);
  const BBox bounds = first.image->bounds();
  if (init.x < 0 || init.y < 0 || init.right() > bounds.w ||
      init.bottom() > bounds.h) {
    throw ValidationError("--init box must lie inside the first frame");
  }

  GroundTruthTrack labels;
  labels.entries.push_back({first.index, init, true});
  KcfModel model = KcfInit(*first.image, init);
  std::optional<int64_t> stopped_at;
  for (int64_t i = 1; i < frames.count(); ++i) {
    const FrameInput frame = frames.Load(i);
    const KcfLocation loc = KcfLocate(model, *frame.image);
    if (loc.peak < a.stop_peak || !Intersects(loc.box, bounds)) {
      stopped_at = frame.index;
      break;
    }
    labels.entries.push_back({frame.index, loc.box, true});
    model = KcfUpdate(std::move(model), *frame.image, loc.box);
  }
  WriteGroundTruth(a.out, labels);
  out << "labeled " << labels.entries.size() << " frames";
  if (stopped_at) out << "; stopped at frame " << *stopped_at;
  out << '\n';
  return kExitOk;
}

int CmdBench(const BenchArgs& a, std::ostream& out) {
  const GroundTruthTrack gt = ReadGroundTruth(a.gt);
  const auto mode = ParseMode(a.mode);
  if (a.jumps.empty() || a.crops.empty()) {
    throw ValidationError("need at least one jump and one crop");
  }
  if (!a.out_dir.empty()) std::filesystem::create_directories(a.out_dir);
  out << std::left << std::setw(6) << "jump" << std::setw(6) << "crop"
      << std::setw(9) << "auc" << std::setw(9) << "overlap" << std::setw(9)
      << "succ@.5" << std::setw(10) << "mean_ms" << "fps\n";
  for (int jump : a.jumps) {
    for (double crop : a.crops) {
      FusionConfig config;
      config.jump = jump;
      config.crop_scale = crop;
      config.mode = mode;
      config.use_roi_detector = !a.roi.empty();
      const auto summary = TrackFrames(a.frames, a.global, a.roi, config);
      const EvalReport report =
          Evaluate(summary.outputs, gt, DefaultThresholds());
      if (!a.out_dir.empty()) {
        std::ostringstream name;
        name << "report_j" << jump << "_c" << crop << ".json";
        WriteReport(std::filesystem::path(a.out_dir) / name.str(), report,
                    ReportFormat::kJson);
      }
      out << std::left << std::setw(6) << jump << std::setw(6) << crop
          << std::setw(9) << Fixed(report.auc, 4) << std::setw(9)
          << Fixed(report.avg_overlap, 4) << std::setw(9)
          << Fixed(report.success_at_05, 4) << std::setw(10)
          << Fixed(summary.mean_ms, 3) << Fixed(report.avg_fps, 1) << '\n';
    }
  }
  return kExitOk;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Hybrid detector + KCF single-target tracker"};
  app.name("hytrack");
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Render a synthetic bundle");
  simulate->add_option("--scenario", sim.scenario, "Scenario document")
      ->required();
  simulate->add_option("--out", sim.out, "Output bundle directory")->required();
  simulate->add_option("--seed", sim.seed, "Override the scenario seed");

  TrackArgs trk;
  auto* track = app.add_subcommand("track", "Run the tracker over frames");
  track->add_option("--frames", trk.frames, "Frame directory or bundle")
      ->required();
  track->add_option("--global", trk.global, "Global detector spec")
      ->required();
  track->add_option("--roi", trk.roi, "ROI detector spec (omit to disable)");
  track->add_option("--jump", trk.jump, "Global detector period")
      ->capture_default_str();
  track->add_option("--crop", trk.crop, "ROI side / target side")
      ->capture_default_str();
  track->add_option("--mode", trk.mode, "sync or pipelined")
      ->capture_default_str();
  track->add_option("--out", trk.out, "Track output file")->required();
  track->add_option("--pred-csv", trk.pred_csv, "Also write a prediction CSV");
  track->add_flag("--no-timings", trk.no_timings,
                  "Omit per-stage timings from the output file");
  track->add_flag("--no-kcf", trk.no_kcf,
                  "Detector-only baseline: global detector on every frame");

  EvaluateArgs ev;
  auto* evaluate = app.add_subcommand("evaluate", "Score a run against gt");
  evaluate->add_option("--pred", ev.pred, "Track output or prediction CSV")
      ->required();
  evaluate->add_option("--gt", ev.gt, "Ground-truth CSV")->required();
  evaluate->add_option("--report", ev.report, "Report path");
  evaluate->add_option("--format", ev.format, "json or csv")
      ->capture_default_str();

  LabelArgs lbl;
  auto* label = app.add_subcommand("label", "Generate labels with KCF");
  label->add_option("--frames", lbl.frames, "Frame directory or bundle")
      ->required();
  label->add_option("--init", lbl.init, "Initial box x,y,w,h")->required();
  label->add_option("--out", lbl.out, "Ground-truth CSV to write")->required();
  label->add_option("--stop-peak", lbl.stop_peak,
                    "Stop when the KCF peak falls below this")
      ->capture_default_str();

  BenchArgs bn;
  auto* bench = app.add_subcommand("bench", "Sweep jump and crop");
  bench->add_option("--frames", bn.frames, "Frame directory or bundle")
      ->required();
  bench->add_option("--gt", bn.gt, "Ground-truth CSV")->required();
  bench->add_option("--global", bn.global, "Global detector spec")->required();
  bench->add_option("--roi", bn.roi, "ROI detector spec");
  bench->add_option("--jumps", bn.jumps, "Comma-separated jumps")
      ->delimiter(',');
  bench->add_option("--crops", bn.crops, "Comma-separated crop scales")
      ->delimiter(',');
  bench->add_option("--mode", bn.mode, "sync or pipelined")
      ->capture_default_str();
  bench->add_option("--out-dir", bn.out_dir, "Write one report per run here");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    const CLI::App* failing = &app;
    for (auto* sub : app.get_subcommands()) failing = sub;
    err << failing->help();
    return kExitUsage;
  }

  try {
    if (*simulate) return CmdSimulate(sim, out);
    if (*track) return CmdTrack(trk, out, err);
    if (*evaluate) return CmdEvaluate(ev, out);
    if (*label) return CmdLabel(lbl, out);
    if (*bench) return CmdBench(bn, out);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitUsage;
}

}  // namespace hytrack
