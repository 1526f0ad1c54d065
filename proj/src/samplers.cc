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

#include "owenshap/samplers.h"

#include <exception>
#include <mutex>
#include <numeric>
#include <string>
#include <vector>

#include "owenshap/errors.h"
#include "owenshap/exact.h"

namespace owenshap {
namespace {

// Marginal of player j at the coalition in `work` with bit j overridden.
// Restores `work` before returning.
inline double Marginal(const Game& game, CoalitionMask& work, std::size_t j) {
  const bool saved = work.test(j);
  work.set(j, true);
  const double with = game(work);
  work.set(j, false);
  const double without = game(work);
  work.set(j, saved);
  return with - without;
}

// Running per-player mean: exact when every observation is identical.
class RunningMeans {
 public:
  explicit RunningMeans(std::size_t players) : mean_(players, 0.0) {}

  void AddMarginals(const Game& game, CoalitionMask& work) {
    ++count_;
    const auto k = static_cast<double>(count_);
    for (std::size_t j = 0; j < mean_.size(); ++j) {
      mean_[j] += (Marginal(game, work, j) - mean_[j]) / k;
    }
  }

  void Add(std::span<const double> values) {
    ++count_;
    const auto k = static_cast<double>(count_);
    for (std::size_t j = 0; j < mean_.size(); ++j) {
      mean_[j] += (values[j] - mean_[j]) / k;
    }
  }

  std::uint64_t count() const { return count_; }
  std::vector<double>& means() { return mean_; }

 private:
  std::vector<double> mean_;
  std::uint64_t count_ = 0;
};

void DrawMask(Rng& rng, double q, CoalitionMask& mask) {
  for (std::size_t i = 0; i < mask.size(); ++i) mask.set(i, rng.bernoulli(q));
}

struct GridPlan {
  std::uint64_t points = 0;
  std::uint64_t q = 0;
  std::uint64_t m = 0;
  bool antithetic = false;
  StreamTag tag = StreamTag::kOwen;
};

// Mean marginal per player at grid point k.
std::vector<double> GridPointMeans(const Game& game, const GridPlan& plan,
                                   std::uint64_t k, RngSeed seed,
                                   const MaskObserver* observer) {
  const double q = static_cast<double>(k) / static_cast<double>(plan.q);
  Rng rng(derive_seed(seed, {static_cast<std::uint64_t>(plan.tag),
                             static_cast<std::uint64_t>(StreamTag::kGridPoint),
                             k}));
  RunningMeans acc(game.arity());
  CoalitionMask drawn(game.arity());
  CoalitionMask paired(game.arity());
  for (std::uint64_t s = 0; s < plan.m; ++s) {
    DrawMask(rng, q, drawn);
    if (plan.antithetic) {
      paired = drawn.complement();
      if (observer != nullptr && *observer) (*observer)(drawn, &paired);
      acc.AddMarginals(game, drawn);
      acc.AddMarginals(game, paired);
    } else {
      if (observer != nullptr && *observer) (*observer)(drawn, nullptr);
      acc.AddMarginals(game, drawn);
    }
  }
  return std::move(acc.means());
}

ShapleyVector Finish(const GridPlan& plan, Algorithm algo, RngSeed seed,
                     std::size_t players,
                     const std::vector<std::vector<double>>& grid_means,
                     const SamplerOptions& opts) {
  // Every grid point holds the same number of samples, so the overall mean
  // is the mean of the grid means.
  RunningMeans total(players);
  for (const auto& g : grid_means) total.Add(g);

  const std::uint64_t per_point = plan.antithetic ? 2 * plan.m : plan.m;
  const std::uint64_t samples = plan.points * per_point;

  ShapleyVector out;
  out.algorithm = algo;
  out.seed = seed.master;
  out.attributions = std::move(total.means());
  if (opts.compat_normalization) {
    const double scale = static_cast<double>(samples) /
                         static_cast<double>(plan.q * plan.m);
    for (double& v : out.attributions) v *= scale;
  }
  out.diagnostics.marginal_samples_per_feature = samples;
  out.diagnostics.model_evaluations = samples * 2 * players;
  out.diagnostics.grid_points_visited = plan.points;
  return out;
}

GridPlan OwenPlan(std::uint64_t q, std::uint64_t m, bool antithetic) {
  SamplingBudget::Owen(q, m);  // validates
  GridPlan plan;
  plan.q = q;
  plan.m = m;
  plan.antithetic = antithetic;
  plan.tag = antithetic ? StreamTag::kHalvedOwen : StreamTag::kOwen;
  plan.points = antithetic ? q / 2 + 1 : q + 1;
  return plan;
}

ShapleyVector RunSerial(const Game& game, const GridPlan& plan, Algorithm algo,
                        RngSeed seed, const SamplerOptions& opts) {
  std::vector<std::vector<double>> grid_means(plan.points);
  for (std::uint64_t k = 0; k < plan.points; ++k) {
    grid_means[k] = GridPointMeans(game, plan, k, seed, &opts.observer);
  }
  return Finish(plan, algo, seed, game.arity(), grid_means, opts);
}

ShapleyVector RunParallel(const Game& game, const GridPlan& plan,
                          Algorithm algo, RngSeed seed,
                          const SamplerOptions& opts) {
  if (opts.observer) return RunSerial(game, plan, algo, seed, opts);
  std::vector<std::vector<double>> grid_means(plan.points);
  std::exception_ptr failure;
  std::mutex failure_mu;
  const auto points = static_cast<std::int64_t>(plan.points);
#pragma omp parallel for schedule(dynamic, 8)
  for (std::int64_t k = 0; k < points; ++k) {
    try {
      grid_means[k] = GridPointMeans(game, plan, static_cast<std::uint64_t>(k),
                                     seed, nullptr);
    } catch (...) {
      std::lock_guard<std::mutex> lock(failure_mu);
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return Finish(plan, algo, seed, game.arity(), grid_means, opts);
}

}  // namespace

ShapleyVector castro_sample(const Game& game, std::uint64_t permutations,
                            RngSeed seed, const SamplerOptions& opts) {
  SamplingBudget::Castro(permutations);  // validates
  const std::size_t players = game.arity();
  const std::size_t first = opts.castro_include_bias ? 0 : 1;
  if (first >= players) {
    throw DimensionError("castro sampling without the bias slot needs at "
                         "least 2 players");
  }
  std::vector<std::size_t> order(players - first);
  std::iota(order.begin(), order.end(), first);

  Rng rng(derive_seed(seed, {static_cast<std::uint64_t>(StreamTag::kCastro)}));
  std::vector<double> mean(players, 0.0);
  CoalitionMask mask(players);
  for (std::uint64_t p = 1; p <= permutations; ++p) {
    rng.shuffle(order);
    for (const std::size_t j : order) mask.set(j, false);
    if (first == 1) mask.set(0);
    double previous = game(mask);
    const auto k = static_cast<double>(p);
    for (const std::size_t j : order) {
      mask.set(j);
      const double current = game(mask);
      mean[j] += ((current - previous) - mean[j]) / k;
      previous = current;
    }
  }

  ShapleyVector out;
  out.algorithm = Algorithm::kCastro;
  out.seed = seed.master;
  out.attributions = std::move(mean);
  out.diagnostics.marginal_samples_per_feature = permutations;
  out.diagnostics.model_evaluations = permutations * (order.size() + 1);
  return out;
}

ShapleyVector owen_sample(const Game& game, std::uint64_t q, std::uint64_t m,
                          RngSeed seed, const SamplerOptions& opts) {
  return RunParallel(game, OwenPlan(q, m, false), Algorithm::kOwen, seed,
                     opts);
}

ShapleyVector halved_owen_sample(const Game& game, std::uint64_t q,
                                 std::uint64_t m, RngSeed seed,
                                 const SamplerOptions& opts) {
  return RunParallel(game, OwenPlan(q, m, true), Algorithm::kHalvedOwen, seed,
                     opts);
}

ShapleyVector estimate_shapley(const Game& game, const SamplingBudget& budget,
                               RngSeed seed, const SamplerOptions& opts) {
  budget.validate();
  switch (budget.kind) {
    case Algorithm::kExact:
      return exact_shapley(game);
    case Algorithm::kCastro:
      return castro_sample(game, budget.castro_permutations, seed, opts);
    case Algorithm::kOwen:
      return owen_sample(game, budget.grid_resolution, budget.inner_samples,
                         seed, opts);
    case Algorithm::kHalvedOwen:
      return halved_owen_sample(game, budget.grid_resolution,
                                budget.inner_samples, seed, opts);
  }
  throw ConfigError("unhandled algorithm");
}

double estimate_multilinear_e(const Game& game, std::size_t j, double q,
                              std::uint64_t samples, RngSeed seed) {
  if (!(q >= 0.0 && q <= 1.0)) {
    throw DomainError("probability q=" + std::to_string(q) +
                      " outside [0, 1]");
  }
  if (j >= game.arity()) {
    throw IndexError("player " + std::to_string(j) + " out of range");
  }
  if (samples < 1) throw BudgetError("need at least one sample");
  Rng rng(derive_seed(seed,
                      {static_cast<std::uint64_t>(StreamTag::kInnerEstimator)}));
  CoalitionMask mask(game.arity());
  double mean = 0.0;
  for (std::uint64_t s = 1; s <= samples; ++s) {
    DrawMask(rng, q, mask);
    mean += (Marginal(game, mask, j) - mean) / static_cast<double>(s);
  }
  return mean;
}

SamplingBudget budget_to_params(Algorithm algo,
                                std::uint64_t equivalent_samples,
                                std::uint64_t m_default) {
  switch (algo) {
    case Algorithm::kExact:
      return SamplingBudget::Exact();
    case Algorithm::kCastro:
      if (equivalent_samples < 1) {
        throw BudgetError("castro sampling needs a budget of at least 1");
      }
      return SamplingBudget::Castro(equivalent_samples);
    case Algorithm::kOwen:
    case Algorithm::kHalvedOwen: {
      if (m_default < 1) throw BudgetError("M must be at least 1");
      const std::uint64_t q = equivalent_samples / m_default;
      if (q < 1) {
        throw BudgetError("budget of " + std::to_string(equivalent_samples) +
                          " equivalent samples is below M=" +
                          std::to_string(m_default));
      }
      SamplingBudget b = algo == Algorithm::kOwen
                             ? SamplingBudget::Owen(q, m_default)
                             : SamplingBudget::HalvedOwen(q, m_default);
      b.requested_equivalent = equivalent_samples;
      b.realized_equivalent = q * m_default;
      return b;
    }
  }
  throw ConfigError("unhandled algorithm");
}

namespace reference {

ShapleyVector owen_sample_serial(const Game& game, std::uint64_t q,
                                 std::uint64_t m, RngSeed seed,
                                 const SamplerOptions& opts) {
  return RunSerial(game, OwenPlan(q, m, false), Algorithm::kOwen, seed, opts);
}

ShapleyVector halved_owen_sample_serial(const Game& game, std::uint64_t q,
                                        std::uint64_t m, RngSeed seed,
                                        const SamplerOptions& opts) {
  return RunSerial(game, OwenPlan(q, m, true), Algorithm::kHalvedOwen, seed,
                   opts);
}

}  // namespace reference

}  // namespace owenshap
