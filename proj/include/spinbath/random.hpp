// Copyright 2026 The spinbath Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SPINBATH_RANDOM_HPP
#define SPINBATH_RANDOM_HPP

#include <cstdint>
#include <random>

namespace spinbath {

/// mt19937_64 with a fixed integer-to-double mapping. The engine's output
/// sequence is pinned by the standard; std::uniform_real_distribution is not,
/// so uniforms are formed here to keep seeded runs identical across
/// toolchains.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform in (0, 1].
  double uniform_open_closed() { return 1.0 - uniform(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace spinbath

#endif  // SPINBATH_RANDOM_HPP
