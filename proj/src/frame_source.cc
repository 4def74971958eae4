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

#include "hytrack/frame_source.h"

#include <cstdio>
#include <fstream>

#include "hytrack/errors.h"
#include "json_util.h"

namespace hytrack {

std::string FrameFileName(int64_t index) {
  char name[32];
  std::snprintf(name, sizeof(name), "frame_%06lld.ppm",
                static_cast<long long>(index));
  return name;
}

namespace {

// The manifest sits next to the frames or one level up (bundle root).
std::filesystem::path FindMeta(const std::filesystem::path& dir) {
  const auto here = dir / "meta.json";
  if (std::filesystem::exists(here)) return here;
  const auto parent = dir.parent_path() / "meta.json";
  if (std::filesystem::exists(parent)) return parent;
  throw IoError("no meta.json in or above " + dir.string());
}

}  // namespace

BundleMeta ReadBundleMeta(const std::filesystem::path& frames_dir) {
  const auto path = FindMeta(frames_dir);
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
  BundleMeta meta;
  meta.width = static_cast<int>(json_util::IntegerField(j, "width"));
  meta.height = static_cast<int>(json_util::IntegerField(j, "height"));
  meta.fps = json_util::NumberField(j, "fps");
  meta.count = json_util::IntegerField(j, "count");
  if (meta.width <= 0 || meta.height <= 0 || meta.count < 0) {
    throw ValidationError(path.string() + ": bad dimensions or count");
  }
  return meta;
}

void WriteBundleMeta(const std::filesystem::path& frames_dir,
                     const BundleMeta& meta) {
  json_util::OrderedJson j;
  j["width"] = meta.width;
  j["height"] = meta.height;
  j["fps"] = meta.fps;
  j["count"] = meta.count;
  const auto path = frames_dir / "meta.json";
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

DirectoryFrameSource::DirectoryFrameSource(std::filesystem::path dir)
    : dir_(std::move(dir)) {
  // Accept either the bundle root or its frames/ directory.
  if (std::filesystem::is_directory(dir_ / "frames")) dir_ /= "frames";
  meta_ = ReadBundleMeta(dir_);
}

FrameInput DirectoryFrameSource::Load(int64_t index) {
  if (index < 0 || index >= meta_.count) {
    throw ValidationError("frame index out of range");
  }
  FrameInput in;
  in.index = index;
  in.path = dir_ / FrameFileName(index);
  in.image = std::make_shared<const Frame>(ReadPpm(in.path));
  return in;
}

}  // namespace hytrack
