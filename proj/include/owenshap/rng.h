/*
 * Copyright 2026 The OwenShap Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef OWENSHAP_RNG_H_
#define OWENSHAP_RNG_H_

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>

#include <span>

namespace owenshap {

struct RngSeed {
  std::uint64_t master = 0;
  friend bool operator==(RngSeed, RngSeed) = default;
};

// Stream tags mixed into derived seeds.
enum class StreamTag : std::uint64_t {
  kCastro = 1,
  kOwen = 2,
  kHalvedOwen = 3,
  kExampleSelection = 4,
  kGridPoint = 5,
  kInnerEstimator = 6,
  kSynthesis = 7,
};

// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

// Deterministic substream seed: folds each component into the parent through
// mix64. Depends only on its arguments, never on scheduling.
RngSeed derive_seed(RngSeed parent, std::initializer_list<std::uint64_t> parts);

// Seeded generator used by every estimator. Engine is std::mt19937_64; the
// conversions below are written out so results do not depend on the
// standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(RngSeed seed) : engine_(seed.master) {}

  std::uint64_t next() { return engine_(); }
  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  bool bernoulli(double p) { return uniform() < p; }
  // Standard normal via Box-Muller (one variate per call).
  double normal();
  // Uniform integer in [0, bound), unbiased via rejection. bound > 0.
  std::uint64_t below(std::uint64_t bound);
  // Fisher-Yates, back to front.
  void shuffle(std::span<std::size_t> items);

 private:
  std::mt19937_64 engine_;
};

}  // namespace owenshap

#endif  // OWENSHAP_RNG_H_
