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

#include "hytrack/track_io.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>
#include <vector>

#include "hytrack/errors.h"

namespace hytrack {

namespace {

std::vector<int64_t> ParseIntegerFields(std::string_view line,
                                        size_t expected, size_t line_no) {
  std::vector<int64_t> fields;
  fields.reserve(expected);
  const char* p = line.data();
  const char* end = line.data() + line.size();
  while (true) {
    int64_t value = 0;
    auto [next, ec] = std::from_chars(p, end, value, 10);
    if (ec != std::errc() || next == p) {
      throw ValidationError("line " + std::to_string(line_no) +
                            ": expected a base-10 integer");
    }
    fields.push_back(value);
    p = next;
    if (p == end) break;
    if (*p != ',') {
      throw ValidationError("line " + std::to_string(line_no) +
                            ": fields must be separated by single commas");
    }
    ++p;
  }
  if (fields.size() != expected) {
    throw ValidationError("line " + std::to_string(line_no) + ": expected " +
                          std::to_string(expected) + " fields, got " +
                          std::to_string(fields.size()));
  }
  return fields;
}

// Calls `fn(fields, line_no)` for every non-empty line.
template <typename Fn>
void ForEachRecord(std::istream& in, size_t expected, Fn&& fn) {
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    fn(ParseIntegerFields(line, expected, line_no), line_no);
  }
}

std::ifstream OpenForRead(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return in;
}

int64_t RoundToInt(double v) { return static_cast<int64_t>(std::llround(v)); }

}  // namespace

GroundTruthTrack ParseGroundTruth(std::istream& in) {
  GroundTruthTrack gt;
  ForEachRecord(in, 6, [&](const std::vector<int64_t>& f, size_t line_no) {
    GroundTruthEntry e;
    e.frame = f[0];
    if (f[5] != 0 && f[5] != 1) {
      throw ValidationError("line " + std::to_string(line_no) +
                            ": visible must be 0 or 1");
    }
    e.visible = f[5] == 1;
    if (e.visible) {
      e.box = BBox{static_cast<double>(f[1]), static_cast<double>(f[2]),
                   static_cast<double>(f[3]), static_cast<double>(f[4])};
      if (!e.box->valid()) {
        throw ValidationError("line " + std::to_string(line_no) +
                              ": visible box needs positive width and height");
      }
    }
    if (!gt.entries.empty() && e.frame <= gt.entries.back().frame) {
      throw ValidationError("line " + std::to_string(line_no) +
                            ": frame indices must strictly increase");
    }
    if (e.frame < 0) {
      throw ValidationError("line " + std::to_string(line_no) +
                            ": negative frame index");
    }
    gt.entries.push_back(e);
  });
  return gt;
}

GroundTruthTrack ReadGroundTruth(const std::filesystem::path& path) {
  auto in = OpenForRead(path);
  return ParseGroundTruth(in);
}

void WriteGroundTruth(std::ostream& out, const GroundTruthTrack& gt) {
  for (const auto& e : gt.entries) {
    out << e.frame << ',';
    if (e.visible && e.box) {
      out << RoundToInt(e.box->x) << ',' << RoundToInt(e.box->y) << ','
          << RoundToInt(e.box->w) << ',' << RoundToInt(e.box->h) << ",1\n";
    } else {
      out << "0,0,0,0,0\n";
    }
  }
}

void WriteGroundTruth(const std::filesystem::path& path,
                      const GroundTruthTrack& gt) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  WriteGroundTruth(out, gt);
  if (!out) throw IoError("write failed: " + path.string());
}

PredictedTrack ParsePredictions(std::istream& in) {
  PredictedTrack pred;
  ForEachRecord(in, 5, [&](const std::vector<int64_t>& f, size_t line_no) {
    PredictedEntry e;
    e.frame = f[0];
    e.box = BBox{static_cast<double>(f[1]), static_cast<double>(f[2]),
                 static_cast<double>(f[3]), static_cast<double>(f[4])};
    if (!e.box->valid()) {
      throw ValidationError("line " + std::to_string(line_no) +
                            ": box needs positive width and height");
    }
    if (e.frame < 0 ||
        (!pred.entries.empty() && e.frame <= pred.entries.back().frame)) {
      throw ValidationError("line " + std::to_string(line_no) +
                            ": frame indices must strictly increase");
    }
    pred.entries.push_back(e);
  });
  return pred;
}

PredictedTrack ReadPredictions(const std::filesystem::path& path) {
  auto in = OpenForRead(path);
  return ParsePredictions(in);
}

void WritePredictions(std::ostream& out, const PredictedTrack& pred) {
  for (const auto& e : pred.entries) {
    if (!e.box) continue;
    // Rounding can collapse a sub-pixel box; keep it at least one pixel.
    const int64_t w = std::max<int64_t>(1, RoundToInt(e.box->w));
    const int64_t h = std::max<int64_t>(1, RoundToInt(e.box->h));
    out << e.frame << ',' << RoundToInt(e.box->x) << ','
        << RoundToInt(e.box->y) << ',' << w << ',' << h << '\n';
  }
}

}  // namespace hytrack
