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

#ifndef HYTRACK_RNG_H_
#define HYTRACK_RNG_H_

#include <array>
#include <cstdint>
#include <string_view>

namespace hytrack {

// xoshiro256** seeded through SplitMix64. Independent substreams are derived
// from a root seed and a stream name, so adding a stream never shifts the
// draws of another one.
//
// Stream names used by the simulator, per detector role (global, roi):
//   <role>/miss    one uniform per frame
//   <role>/jitter  two normals per frame (center x, y)
//   <role>/size    two normals per frame (width, height)
//   <role>/score   one normal per frame
//   <role>/fp      false-positive count and placement, variable per frame
class Rng {
 public:
  explicit Rng(uint64_t seed);
  static Rng Stream(uint64_t root_seed, std::string_view name);

  uint64_t NextU64();
  // Uniform in [0, 1).
  double Uniform();
  // Standard normal via Box-Muller; consumes exactly two uniforms.
  double Normal();
  bool Bernoulli(double p) { return Uniform() < p; }
  // Knuth's multiplication method; fine for the small rates used here.
  int Poisson(double mean);

 private:
  std::array<uint64_t, 4> s_;
};

uint64_t SplitMix64(uint64_t& state);

}  // namespace hytrack

#endif  // HYTRACK_RNG_H_
