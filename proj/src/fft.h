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

#ifndef HYTRACK_SRC_FFT_H_
#define HYTRACK_SRC_FFT_H_

#include <complex>
#include <span>

namespace hytrack::fft {

using Complex = std::complex<double>;

// In-place 2-D DFT of a row-major rows x cols array. Plans are cached per
// shape; execution is safe from several threads at once.
void Forward2d(std::span<Complex> data, int rows, int cols);

// Inverse transform, scaled by 1 / (rows * cols).
void Inverse2d(std::span<Complex> data, int rows, int cols);

}  // namespace hytrack::fft

#endif  // HYTRACK_SRC_FFT_H_
