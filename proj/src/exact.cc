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

#include "owenshap/exact.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>
#include <utility>

#include "owenshap/errors.h"

namespace owenshap {
namespace {

// Expands r (n bits) into an (n+1)-bit mask with a zero inserted at `j`.
inline std::uint64_t InsertZeroBit(std::uint64_t r, std::size_t j) {
  const std::uint64_t low = r & ((std::uint64_t{1} << j) - 1);
  const std::uint64_t high = (r >> j) << (j + 1);
  return high | low;
}

std::uint64_t TableSize(std::size_t players) {
  return std::uint64_t{1} << players;
}

void CheckPlayer(const CoalitionTable& table, std::size_t j) {
  if (j >= table.players()) {
    throw IndexError("player " + std::to_string(j) + " out of range for " +
                     std::to_string(table.players()) + " players");
  }
}

// Shapley value of player j. Shared by the serial and parallel drivers so both
// produce identical bits.
double PlayerShapley(const CoalitionTable& table, std::size_t j) {
  const std::size_t others = table.players() - 1;
  const std::uint64_t bit = std::uint64_t{1} << j;
  std::vector<double> size_mean(others + 1, 0.0);
  std::vector<std::uint64_t> size_count(others + 1, 0);
  const std::uint64_t subsets = TableSize(others);
  for (std::uint64_t r = 0; r < subsets; ++r) {
    const std::uint64_t mask = InsertZeroBit(r, j);
    const auto a = static_cast<std::size_t>(std::popcount(r));
    const double delta = table[mask | bit] - table[mask];
    const auto k = ++size_count[a];
    size_mean[a] += (delta - size_mean[a]) / static_cast<double>(k);
  }
  double value = 0.0;
  for (std::size_t a = 0; a <= others; ++a) {
    value += (size_mean[a] - value) / static_cast<double>(a + 1);
  }
  return value;
}

void FillRange(const Game& game, std::uint64_t begin, std::uint64_t end,
               std::vector<double>& values) {
  CoalitionMask mask(game.arity());
  for (std::uint64_t m = begin; m < end; ++m) {
    mask.assign_integer(m);
    values[m] = game(mask);
  }
}

ShapleyVector MakeResult(std::size_t players) {
  ShapleyVector out;
  out.algorithm = Algorithm::kExact;
  out.attributions.assign(players, 0.0);
  out.diagnostics.model_evaluations = TableSize(players);
  out.diagnostics.marginal_samples_per_feature = TableSize(players - 1);
  return out;
}

}  // namespace

void check_exact_capacity(std::size_t players, const ExactConfig& cfg) {
  if (players > cfg.max_features || players > 62) {
    throw BudgetError("exact enumeration over " + std::to_string(players) +
                      " features exceeds the cap of " +
                      std::to_string(cfg.max_features) + " features");
  }
  const std::uint64_t bytes = TableSize(players) * sizeof(double);
  if (bytes > cfg.memory_budget_bytes) {
    throw BudgetError("exact enumeration over " + std::to_string(players) +
                      " features needs " + std::to_string(bytes) +
                      " bytes, over the memory budget of " +
                      std::to_string(cfg.memory_budget_bytes));
  }
}

CoalitionTable::CoalitionTable(std::size_t players, std::vector<double> values)
    : players_(players), values_(std::move(values)) {
  if (players_ < 1 || players_ > 62 || values_.size() != TableSize(players_)) {
    throw DimensionError("coalition table for " + std::to_string(players_) +
                         " players must hold 2^players values");
  }
}

CoalitionTable CoalitionTable::Build(const Game& game, const ExactConfig& cfg) {
  check_exact_capacity(game.arity(), cfg);
  const std::uint64_t total = TableSize(game.arity());
  std::vector<double> values(total);
  // Chunked so each thread reuses one mask buffer.
  constexpr std::int64_t kChunk = 1024;
  const auto chunks = static_cast<std::int64_t>((total + kChunk - 1) / kChunk);
#pragma omp parallel for schedule(dynamic, 4)
  for (std::int64_t c = 0; c < chunks; ++c) {
    const auto begin = static_cast<std::uint64_t>(c * kChunk);
    const std::uint64_t end = std::min(total, begin + kChunk);
    FillRange(game, begin, end, values);
  }
  return CoalitionTable(game.arity(), std::move(values));
}

ShapleyVector exact_shapley(const CoalitionTable& table) {
  ShapleyVector out = MakeResult(table.players());
  const auto players = static_cast<std::int64_t>(table.players());
#pragma omp parallel for schedule(static)
  for (std::int64_t j = 0; j < players; ++j) {
    out.attributions[j] = PlayerShapley(table, static_cast<std::size_t>(j));
  }
  return out;
}

ShapleyVector exact_shapley(const Game& game, const ExactConfig& cfg) {
  return exact_shapley(CoalitionTable::Build(game, cfg));
}

double exact_multilinear_e(const CoalitionTable& table, std::size_t j,
                           double q) {
  if (!(q >= 0.0 && q <= 1.0)) {
    throw DomainError("probability q=" + std::to_string(q) +
                      " outside [0, 1]");
  }
  CheckPlayer(table, j);
  const std::size_t others = table.players() - 1;
  std::vector<double> weight(others + 1);
  for (std::size_t a = 0; a <= others; ++a) {
    // std::pow(0, 0) == 1, which is the convention needed at q = 0 and q = 1.
    weight[a] = std::pow(q, static_cast<double>(a)) *
                std::pow(1.0 - q, static_cast<double>(others - a));
  }
  const std::uint64_t bit = std::uint64_t{1} << j;
  double sum = 0.0;
  for (std::uint64_t r = 0; r < TableSize(others); ++r) {
    const std::uint64_t mask = InsertZeroBit(r, j);
    sum += weight[std::popcount(r)] * (table[mask | bit] - table[mask]);
  }
  return sum;
}

double exact_multilinear_e(const Game& game, std::size_t j, double q,
                           const ExactConfig& cfg) {
  if (!(q >= 0.0 && q <= 1.0)) {
    throw DomainError("probability q=" + std::to_string(q) +
                      " outside [0, 1]");
  }
  return exact_multilinear_e(CoalitionTable::Build(game, cfg), j, q);
}

double exact_integral_shapley(const CoalitionTable& table, std::size_t j) {
  CheckPlayer(table, j);
  const std::size_t others = table.players() - 1;
  // Integral of q^a (1-q)^(n-a) over [0, 1] is B(a+1, n-a+1).
  std::vector<double> weight(others + 1);
  for (std::size_t a = 0; a <= others; ++a) {
    weight[a] = std::beta(static_cast<double>(a + 1),
                          static_cast<double>(others - a + 1));
  }
  const std::uint64_t bit = std::uint64_t{1} << j;
  double sum = 0.0;
  for (std::uint64_t r = 0; r < TableSize(others); ++r) {
    const std::uint64_t mask = InsertZeroBit(r, j);
    sum += weight[std::popcount(r)] * (table[mask | bit] - table[mask]);
  }
  return sum;
}

double exact_integral_shapley(const Game& game, std::size_t j,
                              const ExactConfig& cfg) {
  return exact_integral_shapley(CoalitionTable::Build(game, cfg), j);
}

namespace reference {

CoalitionTable build_table_serial(const Game& game, const ExactConfig& cfg) {
  check_exact_capacity(game.arity(), cfg);
  std::vector<double> values(TableSize(game.arity()));
  FillRange(game, 0, values.size(), values);
  return CoalitionTable(game.arity(), std::move(values));
}

ShapleyVector exact_shapley_serial(const CoalitionTable& table) {
  ShapleyVector out = MakeResult(table.players());
  for (std::size_t j = 0; j < table.players(); ++j) {
    out.attributions[j] = PlayerShapley(table, j);
  }
  return out;
}

ShapleyVector exact_shapley_serial(const Game& game, const ExactConfig& cfg) {
  return exact_shapley_serial(build_table_serial(game, cfg));
}

}  // namespace reference

}  // namespace owenshap
