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

#include <cmath>
#include <numeric>
#include <vector>

#include "gtest/gtest.h"
#include "oracles.h"
#include "owenshap/errors.h"
#include "owenshap/models.h"

namespace owenshap {
namespace {

using testing::PermutationOracle;
using testing::RandomGame;

Game Unanimity2() { return synthetic_game(UnanimityGameSpec{2, {0, 1}}); }
Game Glove3() { return synthetic_game(GloveGameSpec{3, {0}, {1, 2}}); }
Game Linear3() { return synthetic_game(LinearGameSpec{{0.2, -1.0, 3.5}}); }

TEST(ExactShapley, UnanimitySplitsEvenly) {
  const ShapleyVector sv = exact_shapley(Unanimity2());
  EXPECT_DOUBLE_EQ(sv[0], 0.5);
  EXPECT_DOUBLE_EQ(sv[1], 0.5);
  EXPECT_EQ(sv.diagnostics.model_evaluations, 4u);
}

TEST(ExactShapley, GloveGame) {
  // Frozen from the permutation oracle: (2/3, 1/6, 1/6).
  const ShapleyVector sv = exact_shapley(Glove3());
  EXPECT_NEAR(sv[0], 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(sv[1], 1.0 / 6.0, 1e-15);
  EXPECT_NEAR(sv[2], 1.0 / 6.0, 1e-15);
  const auto oracle = PermutationOracle(Glove3());
  for (int j = 0; j < 3; ++j) EXPECT_NEAR(sv[j], oracle[j], 1e-15);
}

TEST(ExactShapley, LinearGameReturnsWeights) {
  const ShapleyVector sv = exact_shapley(Linear3());
  EXPECT_NEAR(sv[0], 0.2, 1e-15);
  EXPECT_NEAR(sv[1], -1.0, 1e-15);
  EXPECT_NEAR(sv[2], 3.5, 1e-15);
}

TEST(ExactShapley, ConstantMarginalsAreExact) {
  // Dyadic weights make every coalition sum exact.
  const Game g = synthetic_game(LinearGameSpec{{0.5, -1.25, 3.0, 0.125, 2.0}});
  const ShapleyVector sv = exact_shapley(g);
  EXPECT_EQ(sv.attributions, (std::vector<double>{0.5, -1.25, 3.0, 0.125, 2.0}));
}

TEST(ExactShapley, OverCapIsBudgetError) {
  ExactConfig cfg;
  cfg.max_features = 4;
  const Game g = synthetic_game(LinearGameSpec{std::vector<double>(5, 1.0)});
  EXPECT_THROW(exact_shapley(g, cfg), BudgetError);
  cfg.max_features = 25;
  cfg.memory_budget_bytes = 64;
  EXPECT_THROW(exact_shapley(g, cfg), BudgetError);
}

TEST(ExactShapley, MatchesPermutationOracle) {
  Rng rng(RngSeed{1});
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t players = 2 + rng.below(5);
    const Game g = RandomGame(players, rng);
    const ShapleyVector sv = exact_shapley(g);
    const auto oracle = PermutationOracle(g);
    for (std::size_t j = 0; j < players; ++j) EXPECT_NEAR(sv[j], oracle[j], 1e-10);
  }
}

TEST(ExactShapley, Efficiency) {
  Rng rng(RngSeed{2});
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t players = 2 + rng.below(9);
    const Game g = RandomGame(players, rng);
    const ShapleyVector sv = exact_shapley(g);
    const double total =
        std::accumulate(sv.attributions.begin(), sv.attributions.end(), 0.0);
    EXPECT_NEAR(total,
                g(CoalitionMask::Full(players)) - g(CoalitionMask::Empty(players)),
                1e-10);
  }
}

TEST(ExactShapley, NullPlayerIsExactlyZero) {
  Rng rng(RngSeed{3});
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t players = 2 + rng.below(8);
    const std::size_t null_player = rng.below(players);
    const ShapleyVector sv = exact_shapley(
        testing::RandomGameWithNullPlayer(players, null_player, rng));
    EXPECT_EQ(sv[null_player], 0.0);
  }
}

TEST(ExactShapley, SymmetricPlayersAgree) {
  Rng rng(RngSeed{4});
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t players = 2 + rng.below(8);
    const std::size_t i = rng.below(players);
    const std::size_t j = (i + 1 + rng.below(players - 1)) % players;
    const ShapleyVector sv =
        exact_shapley(testing::RandomSymmetricGame(players, i, j, rng));
    EXPECT_NEAR(sv[i], sv[j], 1e-12);
  }
}

TEST(ExactShapley, Linearity) {
  Rng rng(RngSeed{5});
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t players = 2 + rng.below(8);
    const Game xi = RandomGame(players, rng);
    const Game omega = RandomGame(players, rng);
    const double alpha = 4.0 * rng.uniform() - 2.0;
    const ShapleyVector combined = exact_shapley(combine_games(xi, alpha, omega));
    const ShapleyVector a = exact_shapley(xi);
    const ShapleyVector b = exact_shapley(omega);
    for (std::size_t j = 0; j < players; ++j) {
      EXPECT_NEAR(combined[j], alpha * a[j] + b[j], 1e-10);
    }
  }
}

TEST(ExactShapley, ParallelMatchesSerialReferenceBitwise) {
  Rng rng(RngSeed{6});
  for (int trial = 0; trial < 5; ++trial) {
    const Game g = RandomGame(12, rng);
    const ShapleyVector par = exact_shapley(g);
    const ShapleyVector ser = reference::exact_shapley_serial(g);
    EXPECT_EQ(par.attributions, ser.attributions);
    EXPECT_EQ(CoalitionTable::Build(g).values().size(),
              reference::build_table_serial(g).values().size());
  }
}

TEST(ExactMultilinear, Examples) {
  for (const double q : {0.0, 0.1, 0.37, 0.5, 1.0}) {
    EXPECT_NEAR(exact_multilinear_e(Unanimity2(), 0, q), q, 1e-15);
  }
  // Frozen by enumerating the 4 subsets of {1, 2}.
  EXPECT_NEAR(exact_multilinear_e(Glove3(), 0, 0.5), 0.75, 1e-15);
}

TEST(ExactMultilinear, AtZeroIsSingletonMarginal) {
  Rng rng(RngSeed{7});
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t players = 2 + rng.below(6);
    const Game g = RandomGame(players, rng);
    const std::size_t j = rng.below(players);
    const CoalitionMask empty(players);
    EXPECT_NEAR(exact_multilinear_e(g, j, 0.0),
                g(empty.with_feature(j)) - g(empty), 1e-15);
  }
}

TEST(ExactMultilinear, DomainAndIndexErrors) {
  EXPECT_THROW(exact_multilinear_e(Unanimity2(), 0, -0.1), DomainError);
  EXPECT_THROW(exact_multilinear_e(Unanimity2(), 0, 1.5), DomainError);
  EXPECT_THROW(exact_multilinear_e(Unanimity2(), 2, 0.5), IndexError);
  EXPECT_THROW(exact_integral_shapley(Unanimity2(), 5), IndexError);
}

TEST(ExactIntegral, Examples) {
  EXPECT_NEAR(exact_integral_shapley(Unanimity2(), 0), 0.5, 1e-15);
  EXPECT_NEAR(exact_integral_shapley(Glove3(), 0), 2.0 / 3.0, 1e-14);
  const double weights[] = {0.2, -1.0, 3.5};
  for (std::size_t j = 0; j < 3; ++j) {
    EXPECT_NEAR(exact_integral_shapley(Linear3(), j), weights[j], 1e-14);
  }
}

TEST(ExactIntegral, MatchesNumericalQuadratureOfE) {
  // Composite Simpson over e_j(q) as a third route to the same number.
  Rng rng(RngSeed{8});
  const Game g = RandomGame(5, rng);
  const CoalitionTable table = CoalitionTable::Build(g);
  for (std::size_t j = 0; j < 5; ++j) {
    constexpr int kIntervals = 200;
    double sum = 0.0;
    for (int i = 0; i <= kIntervals; ++i) {
      const double q = static_cast<double>(i) / kIntervals;
      const double w = (i == 0 || i == kIntervals) ? 1 : (i % 2 ? 4 : 2);
      sum += w * exact_multilinear_e(table, j, q);
    }
    EXPECT_NEAR(sum / (3.0 * kIntervals), exact_integral_shapley(table, j), 1e-10);
  }
}

TEST(ExactIntegral, EqualsExactShapley) {
  Rng rng(RngSeed{9});
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t players = 2 + rng.below(9);
    const CoalitionTable table = CoalitionTable::Build(RandomGame(players, rng));
    const ShapleyVector sv = exact_shapley(table);
    for (std::size_t j = 0; j < players; ++j) {
      EXPECT_NEAR(exact_integral_shapley(table, j), sv[j], 1e-10);
    }
  }
}

}  // namespace
}  // namespace owenshap
