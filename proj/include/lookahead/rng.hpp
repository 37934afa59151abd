// Copyright 2026 The Lookahead Authors
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

#ifndef LOOKAHEAD_RNG_HPP
#define LOOKAHEAD_RNG_HPP

#include <cstdint>
#include <random>

namespace lookahead {

/// Named substreams; each consumer of randomness draws from its own.
enum class Stream : std::uint64_t {
  kFeatures = 1,
  kNoise = 2,
  kSplit = 3,
  kBootstrap = 4,
  kResidual = 5,
  kTest = 99,
};

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Reproducible random source.
///
/// std::mt19937_64 with uniform and normal variates computed from the raw
/// engine output, so draws are identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(mix64(seed)) {}

  /// Independent generator keyed by (seed, stream, index).
  static Rng substream(std::uint64_t seed, Stream stream, std::uint64_t index = 0) {
    return Rng(mix64(mix64(seed) ^ mix64(static_cast<std::uint64_t>(stream) * 0x100000001b3ULL + index)));
  }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform integer on [0, n). Rejection sampling removes modulo bias.
  std::uint64_t below(std::uint64_t n);

  /// Standard normal via Box-Muller; the second variate is cached.
  double normal();

  double normal(double mean, double stddev) { return mean + stddev * normal(); }

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace lookahead

#endif
