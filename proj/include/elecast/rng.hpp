// Copyright 2026 The elecast Authors. All rights reserved.
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

// Counter-based random streams. A stream is identified by (seed, path,
// substream); its n-th output depends only on that key and n, so paths can
// be simulated in any order on any number of threads with identical results.
//
// Normal and Student-t variates are produced here rather than through
// <random> distributions, whose algorithms differ between standard libraries.

#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>

namespace elecast {

inline constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class CounterRng {
 public:
  using result_type = std::uint64_t;

  CounterRng(std::uint64_t seed, std::uint64_t path, std::uint64_t substream)
      : key_(mix64(seed ^ mix64(path ^ mix64(substream ^ 0x5851f42d4c957f2dULL)))) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    return mix64(key_ + (++counter_) * 0x9e3779b97f4a7c15ULL);
  }

  // Uniform on (0, 1].
  double uniform() {
    return static_cast<double>(((*this)() >> 11) + 1) * 0x1.0p-53;
  }

  // Box-Muller; the paired variate is kept for the next call.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double r = std::sqrt(-2.0 * std::log(uniform()));
    const double theta = 2.0 * std::numbers::pi * uniform();
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

  // Standard Student-t with integer degrees of freedom: Z / sqrt(chi2_nu / nu).
  double student_t(int nu) {
    const double z = normal();
    double chi2 = 0.0;
    for (int k = 0; k < nu; ++k) {
      const double g = normal();
      chi2 += g * g;
    }
    return z / std::sqrt(chi2 / nu);
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace elecast
