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

#include "fft.h"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>
#include <vector>

namespace hytrack::fft {

namespace {

// Planning is not thread-safe in FFTW; executing an existing plan on new
// arrays is. FFTW_UNALIGNED lets a plan run on any std::vector buffer.
fftw_plan PlanFor(int rows, int cols, int sign) {
  static std::mutex mu;
  static std::map<std::tuple<int, int, int>, fftw_plan> plans;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_tuple(rows, cols, sign);
  auto it = plans.find(key);
  if (it != plans.end()) return it->second;
  std::vector<Complex> scratch(static_cast<size_t>(rows) * cols);
  auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
  fftw_plan plan = fftw_plan_dft_2d(rows, cols, buf, buf, sign,
                                    FFTW_ESTIMATE | FFTW_UNALIGNED);
  plans.emplace(key, plan);
  return plan;
}

void Execute(std::span<Complex> data, int rows, int cols, int sign) {
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(PlanFor(rows, cols, sign), buf, buf);
}

}  // namespace

void Forward2d(std::span<Complex> data, int rows, int cols) {
  Execute(data, rows, cols, FFTW_FORWARD);
}

void Inverse2d(std::span<Complex> data, int rows, int cols) {
  Execute(data, rows, cols, FFTW_BACKWARD);
  const double scale = 1.0 / (static_cast<double>(rows) * cols);
  for (auto& v : data) v *= scale;
}

}  // namespace hytrack::fft
