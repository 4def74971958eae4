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

#include "hytrack/frame.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <string>

#include "hytrack/errors.h"

namespace hytrack {

Frame::Frame(int width, int height, Rgb fill) : width_(width), height_(height) {
  if (width < 0 || height < 0) throw ValidationError("negative frame size");
  pixels_.resize(static_cast<size_t>(width) * height * 3);
  for (size_t i = 0; i < pixels_.size(); i += 3) {
    pixels_[i] = fill[0];
    pixels_[i + 1] = fill[1];
    pixels_[i + 2] = fill[2];
  }
}

Frame::Frame(int width, int height, std::vector<uint8_t> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
  if (width < 0 || height < 0 ||
      pixels_.size() != static_cast<size_t>(width) * height * 3) {
    throw ValidationError("pixel buffer does not match frame size");
  }
}

void Frame::FillRect(const BBox& box, Rgb color) {
  const int x0 = std::max(0, static_cast<int>(std::lround(box.x)));
  const int y0 = std::max(0, static_cast<int>(std::lround(box.y)));
  const int x1 = std::min(width_, static_cast<int>(std::lround(box.right())));
  const int y1 =
      std::min(height_, static_cast<int>(std::lround(box.bottom())));
  for (int y = y0; y < y1; ++y) {
    for (int x = x0; x < x1; ++x) set(x, y, color);
  }
}

namespace {

// Reads the next whitespace-delimited header token, skipping comments.
std::string NextToken(std::istream& in) {
  std::string token;
  int c = in.get();
  while (c != EOF) {
    if (c == '#') {
      while (c != EOF && c != '\n') c = in.get();
    } else if (std::isspace(c)) {
      if (!token.empty()) break;
    } else {
      token.push_back(static_cast<char>(c));
    }
    c = in.get();
  }
  return token;
}

int ParseHeaderInt(const std::string& token, const std::filesystem::path& p) {
  try {
    size_t used = 0;
    const int v = std::stoi(token, &used);
    if (used != token.size() || v < 0) throw std::invalid_argument(token);
    return v;
  } catch (const std::exception&) {
    throw ValidationError("bad PPM header in " + p.string());
  }
}

}  // namespace

Frame ReadPpm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  if (NextToken(in) != "P6") {
    throw ValidationError("not a binary PPM: " + path.string());
  }
  const int width = ParseHeaderInt(NextToken(in), path);
  const int height = ParseHeaderInt(NextToken(in), path);
  const int maxval = ParseHeaderInt(NextToken(in), path);
  if (maxval != 255) {
    throw ValidationError("only 8-bit PPM is supported: " + path.string());
  }
  std::vector<uint8_t> pixels(static_cast<size_t>(width) * height * 3);
  in.read(reinterpret_cast<char*>(pixels.data()),
          static_cast<std::streamsize>(pixels.size()));
  if (in.gcount() != static_cast<std::streamsize>(pixels.size())) {
    throw ValidationError("truncated PPM: " + path.string());
  }
  return Frame(width, height, std::move(pixels));
}

void WritePpm(const std::filesystem::path& path, const Frame& frame) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << "P6\n" << frame.width() << ' ' << frame.height() << "\n255\n";
  out.write(reinterpret_cast<const char*>(frame.data().data()),
            static_cast<std::streamsize>(frame.data().size()));
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace hytrack
