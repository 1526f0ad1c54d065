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

#include "owenshap/rng.h"

#include <cmath>
#include <numbers>
#include <utility>

namespace owenshap {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

RngSeed derive_seed(RngSeed parent,
                    std::initializer_list<std::uint64_t> parts) {
  std::uint64_t h = mix64(parent.master);
  for (const std::uint64_t p : parts) h = mix64(h ^ mix64(p));
  return RngSeed{h};
}

std::uint64_t Rng::below(std::uint64_t bound) {
  // Rejecting r < 2^64 mod bound leaves a range that is a multiple of bound.
  const std::uint64_t limit = -bound % bound;
  while (true) {
    const std::uint64_t r = engine_();
    if (r >= limit) return r % bound;
  }
}

double Rng::normal() {
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

void Rng::shuffle(std::span<std::size_t> items) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const auto k = static_cast<std::size_t>(below(i));
    std::swap(items[i - 1], items[k]);
  }
}

}  // namespace owenshap
