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

#ifndef HYTRACK_FRAME_SOURCE_H_
#define HYTRACK_FRAME_SOURCE_H_

#include <cstdint>
#include <filesystem>
#include <memory>

#include "hytrack/frame.h"

namespace hytrack {

struct FrameInput {
  int64_t index = 0;
  std::shared_ptr<const Frame> image;
  // On-disk location, when there is one; remote detectors need it.
  std::filesystem::path path;
};

class FrameSource {
 public:
  virtual ~FrameSource() = default;
  virtual int64_t count() const = 0;
  // 0 <= index < count().
  virtual FrameInput Load(int64_t index) = 0;
};

// `meta.json` in a frame directory.
struct BundleMeta {
  int width = 0;
  int height = 0;
  double fps = 0.0;
  int64_t count = 0;
};

// Reads frames_dir/meta.json, falling back to the parent directory.
BundleMeta ReadBundleMeta(const std::filesystem::path& frames_dir);
void WriteBundleMeta(const std::filesystem::path& frames_dir,
                     const BundleMeta& meta);

// frame_%06d.ppm
std::string FrameFileName(int64_t index);

// Frames of a directory written by the simulator (or anything following the
// same layout). `dir` may be a bundle root containing frames/; meta.json is
// looked up next to the frames and then one level up.
class DirectoryFrameSource : public FrameSource {
 public:
  explicit DirectoryFrameSource(std::filesystem::path dir);

  int64_t count() const override { return meta_.count; }
  FrameInput Load(int64_t index) override;
  const BundleMeta& meta() const { return meta_; }

 private:
  std::filesystem::path dir_;
  BundleMeta meta_;
};

}  // namespace hytrack

#endif  // HYTRACK_FRAME_SOURCE_H_
