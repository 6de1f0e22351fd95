// Copyright 2026 The agsbm Authors.
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

// Counter-based random numbers.
//
// Every random decision in the library is drawn from a stream identified by
// (seed, stream tag, index).  Streams are independent of each other and of
// the order in which they are consumed, which is what makes the pipelines
// reproducible regardless of how work is split across threads.

#ifndef AGSBM_RNG_H_
#define AGSBM_RNG_H_

#include <cstdint>
#include <limits>

namespace agsbm {

// Stream tags.  Values are part of the reproducibility contract: changing
// them changes every sampled graph.
enum class Stream : uint64_t {
  kLabels = 1,
  kEdges = 2,
  kSplit = 3,
  kProbes = 4,
  kRuns = 5,
  kVote = 6,
  kAnchors = 7,
  kTrials = 8,
  kSweep = 9,
  kMonteCarlo = 10,
  kPairs = 11,
};

// The SplitMix64 finalizer: a bijective 64-bit mixer.
inline uint64_t Mix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Key of the stream (seed, stream, index).
inline uint64_t DeriveSeed(uint64_t seed, Stream stream, uint64_t index) {
  return Mix64(Mix64(Mix64(seed) ^ static_cast<uint64_t>(stream)) + index);
}

// Uniform double in [0, 1) from a single hashed counter value; used where a
// single independent coin per item is needed (edge coins, split coins).
inline double UnitFromBits(uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// A counter-based generator.  Satisfies UniformRandomBitGenerator, so it can
// drive the <random> distributions.
class Rng {
 public:
  using result_type = uint64_t;

  explicit Rng(uint64_t key) : key_(key) {}
  Rng(uint64_t seed, Stream stream, uint64_t index)
      : key_(DeriveSeed(seed, stream, index)) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() { return Mix64(key_ ^ Mix64(counter_++)); }

  // Uniform in [0, 1).
  double Uniform() { return UnitFromBits((*this)()); }

  // Uniform in (0, 1]; safe to pass to log().
  double UniformPositive() { return 1.0 - Uniform(); }

  // Uniform integer in [0, bound); bound must be positive.
  uint64_t Below(uint64_t bound);

  bool Bernoulli(double p) { return Uniform() < p; }

 private:
  uint64_t key_;
  uint64_t counter_ = 0;
};

}  // namespace agsbm

#endif  // AGSBM_RNG_H_
