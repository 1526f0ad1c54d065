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

#ifndef OWENSHAP_EXACT_H_
#define OWENSHAP_EXACT_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "owenshap/core.h"

namespace owenshap {

struct ExactConfig {
  // Cap on the number of players (n+1).
  std::size_t max_features = 25;
  // Cap on the size of the 2^(n+1) evaluation table.
  std::size_t memory_budget_bytes = std::size_t{1} << 30;
};

// Throws BudgetError naming the cap if `players` cannot be enumerated.
void check_exact_capacity(std::size_t players, const ExactConfig& cfg);

// Every coalition value of a game, indexed by the mask's integer encoding
// (bit i = player i).
class CoalitionTable {
 public:
  // Evaluates all 2^arity coalitions, in parallel across masks.
  static CoalitionTable Build(const Game& game, const ExactConfig& cfg = {});

  CoalitionTable(std::size_t players, std::vector<double> values);

  std::size_t players() const { return players_; }
  double operator[](std::uint64_t mask) const { return values_[mask]; }
  std::span<const double> values() const { return values_; }

 private:
  std::size_t players_;
  std::vector<double> values_;
};

// Shapley values by full subset enumeration. Each player's value is computed
// as the mean over coalition sizes of the mean marginal contribution over
// coalitions of that size, which equals the factorial-weighted sum.
ShapleyVector exact_shapley(const Game& game, const ExactConfig& cfg = {});
ShapleyVector exact_shapley(const CoalitionTable& table);

// e_j(q): expected marginal contribution of player j when every other player
// joins independently with probability q. Throws DomainError if q is not in
// [0, 1] and IndexError if j is out of range.
double exact_multilinear_e(const Game& game, std::size_t j, double q,
                           const ExactConfig& cfg = {});
double exact_multilinear_e(const CoalitionTable& table, std::size_t j,
                           double q);

// The integral of e_j(q) over [0, 1], evaluated term by term with Beta
// integrals. Equal to exact_shapley(...)[j].
double exact_integral_shapley(const Game& game, std::size_t j,
                              const ExactConfig& cfg = {});
double exact_integral_shapley(const CoalitionTable& table, std::size_t j);

namespace reference {

// Single-threaded counterparts of the kernels above. Results are bitwise
// identical to the parallel versions.
CoalitionTable build_table_serial(const Game& game, const ExactConfig& cfg = {});
ShapleyVector exact_shapley_serial(const CoalitionTable& table);
ShapleyVector exact_shapley_serial(const Game& game,
                                   const ExactConfig& cfg = {});

}  // namespace reference

}  // namespace owenshap

#endif  // OWENSHAP_EXACT_H_
