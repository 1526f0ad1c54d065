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

#ifndef OWENSHAP_SAMPLERS_H_
#define OWENSHAP_SAMPLERS_H_

#include <cstddef>
#include <cstdint>
#include <functional>

#include "owenshap/core.h"
#include "owenshap/rng.h"

namespace owenshap {

// Called once per mask drawn by the Owen samplers. For halved Owen sampling `antithetic` points to
// the complement paired with `drawn`; otherwise it is null. Installing an
// observer forces single-threaded execution.
using MaskObserver =
    std::function<void(const CoalitionMask& drawn, const CoalitionMask* antithetic)>;

struct SamplerOptions {
  // Divide Owen sums by Q*M as the original pseudo-code does, instead of by
  // the number of marginal samples actually drawn. Biased at small Q.
  bool compat_normalization = false;
  // Castro permutations run over all n+1 players. When false the bias slot 0
  // is held present throughout and reported as 0.
  bool castro_include_bias = true;
  MaskObserver observer;
};

// Averages marginal contributions along M_c uniformly random permutations.
// Costs n+2 game evaluations per permutation.
ShapleyVector castro_sample(const Game& game, std::uint64_t permutations,
                            RngSeed seed, const SamplerOptions& opts = {});

// Multilinear-extension sampling on the grid q = 0, 1/Q, ..., 1. Each grid
// point draws M Bernoulli(q) masks; one mask is shared by all players, with
// player j's own bit overridden when forming its marginal. Grid points run in
// parallel, each on its own derived substream.
ShapleyVector owen_sample(const Game& game, std::uint64_t q, std::uint64_t m,
                          RngSeed seed, const SamplerOptions& opts = {});

// Antithetic variant on the grid q = 0, 1/Q, ..., floor(Q/2)/Q: every mask I
// is paired with 1 - I. For even Q the midpoint 0.5 is visited once and both
// of its draws are kept.
ShapleyVector halved_owen_sample(const Game& game, std::uint64_t q,
                                 std::uint64_t m, RngSeed seed,
                                 const SamplerOptions& opts = {});

// Dispatches on budget.kind. Exact budgets ignore the seed.
ShapleyVector estimate_shapley(const Game& game, const SamplingBudget& budget,
                               RngSeed seed, const SamplerOptions& opts = {});

// Monte Carlo estimate of e_j(q) from `samples` independent masks: the inner
// loop of Owen sampling at a single grid point.
double estimate_multilinear_e(const Game& game, std::size_t j, double q,
                              std::uint64_t samples, RngSeed seed);

// Translates an equivalent-sample budget: castro -> M_c = budget;
// owen variants -> Q = budget / m_default (rounded down), M = m_default.
// The realized equivalent count is recorded in the result.
SamplingBudget budget_to_params(Algorithm algo,
                                std::uint64_t equivalent_samples,
                                std::uint64_t m_default = 2);

namespace reference {

// Single-threaded Owen kernels. Same substreams and summation order as the
// parallel versions, so results are bitwise identical.
ShapleyVector owen_sample_serial(const Game& game, std::uint64_t q,
                                 std::uint64_t m, RngSeed seed,
                                 const SamplerOptions& opts = {});
ShapleyVector halved_owen_sample_serial(const Game& game, std::uint64_t q,
                                        std::uint64_t m, RngSeed seed,
                                        const SamplerOptions& opts = {});

}  // namespace reference

}  // namespace owenshap

#endif  // OWENSHAP_SAMPLERS_H_
