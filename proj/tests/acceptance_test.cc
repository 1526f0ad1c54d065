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

// Acceptance suite. Prints one line per criterion and exits non-zero if any
// criterion fails. Every tolerance below is fixed.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.h"
#include "owenshap/cli.h"
#include "owenshap/core.h"
#include "owenshap/exact.h"
#include "owenshap/experiments.h"
#include "owenshap/models.h"
#include "owenshap/rng.h"
#include "owenshap/samplers.h"

namespace owenshap {
namespace {

using testing::PermutationOracle;
using testing::RandomGame;
using testing::RandomGameWithNullPlayer;
using testing::RandomSymmetricGame;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string Fmt(const char* format, double a, double b = 0, double c = 0,
                double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, a, b, c, d);
  return buf;
}

double MaxAbsDiff(const std::vector<double>& a, const std::vector<double>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, std::abs(a[i] - b[i]));
  }
  return worst;
}

Outcome OracleEquivalence() {
  Rng rng(RngSeed{101});
  double worst = 0.0;
  for (int g = 0; g < 100; ++g) {
    const Game game = RandomGame(3 + g % 4, rng);
    worst = std::max(worst, MaxAbsDiff(exact_shapley(game).attributions,
                                       PermutationOracle(game)));
  }
  return {worst <= 1e-10, Fmt("100 games, max |err| = %.3g (tol 1e-10)", worst)};
}

Outcome MultilinearIdentity() {
  Rng rng(RngSeed{102});
  double worst = 0.0;
  for (int g = 0; g < 100; ++g) {
    const std::size_t players = 2 + g % 9;
    const CoalitionTable table = CoalitionTable::Build(RandomGame(players, rng));
    const ShapleyVector sv = exact_shapley(table);
    for (std::size_t j = 0; j < players; ++j) {
      worst = std::max(worst, std::abs(exact_integral_shapley(table, j) - sv[j]));
    }
  }
  return {worst <= 1e-10, Fmt("100 games, max |err| = %.3g (tol 1e-10)", worst)};
}

Outcome AxiomSuite() {
  Rng rng(RngSeed{103});
  double efficiency = 0.0, symmetry = 0.0, linearity = 0.0;
  int null_failures = 0;
  for (int g = 0; g < 200; ++g) {
    const std::size_t players = 2 + g % 7;
    const Game game = RandomGame(players, rng);
    const ShapleyVector sv = exact_shapley(game);
    double sum = 0.0;
    for (double v : sv.attributions) sum += v;
    efficiency = std::max(efficiency,
                          std::abs(sum - (game(CoalitionMask::Full(players)) -
                                          game(CoalitionMask::Empty(players)))));

    const std::size_t null_player = rng.below(players);
    if (exact_shapley(RandomGameWithNullPlayer(players, null_player, rng))[null_player] != 0.0) {
      ++null_failures;
    }

    const std::size_t i = rng.below(players);
    const std::size_t j = (i + 1 + rng.below(players - 1)) % players;
    const ShapleyVector sym = exact_shapley(RandomSymmetricGame(players, i, j, rng));
    symmetry = std::max(symmetry, std::abs(sym[i] - sym[j]));

    const Game other = RandomGame(players, rng);
    const double a = 4.0 * rng.uniform() - 2.0;
    const ShapleyVector lin = exact_shapley(combine_games(other, a, game));
    const ShapleyVector other_sv = exact_shapley(other);
    for (std::size_t k = 0; k < players; ++k) {
      linearity = std::max(linearity, std::abs(lin[k] - (sv[k] + a * other_sv[k])));
    }
  }
  const bool pass = efficiency <= 1e-10 && null_failures == 0 &&
                    symmetry <= 1e-12 && linearity <= 1e-10;
  return {pass, Fmt("200 games, efficiency %.3g, symmetry %.3g, linearity %.3g, "
                    "non-zero null players %.0f",
                    efficiency, symmetry, linearity, null_failures)};
}

Outcome SamplerExactness() {
  Rng rng(RngSeed{104});
  double linear_err = 0.0, null_err = 0.0;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const std::size_t players = 3 + rng.below(6);
    LinearGameSpec spec;
    for (std::size_t j = 0; j < players; ++j) spec.weights.push_back(4.0 * rng.uniform() - 2.0);
    const Game linear = synthetic_game(spec);
    const std::size_t null_player = rng.below(players);
    const Game with_null = RandomGameWithNullPlayer(players, null_player, rng);
    const std::uint64_t q = 1 + rng.below(40);
    const std::uint64_t m = 1 + rng.below(5);
    const std::vector<SamplingBudget> budgets = {
        SamplingBudget::Castro(1 + rng.below(100)), SamplingBudget::Owen(q, m),
        SamplingBudget::HalvedOwen(q, m)};
    for (const SamplingBudget& budget : budgets) {
      linear_err = std::max(linear_err,
                            MaxAbsDiff(estimate_shapley(linear, budget, RngSeed{seed}).attributions,
                                       spec.weights));
      null_err = std::max(null_err, std::abs(estimate_shapley(with_null, budget,
                                                              RngSeed{seed})[null_player]));
    }
  }
  return {linear_err < 1e-12 && null_err < 1e-12,
          Fmt("50 seeds x 3 estimators, linear max |err| %.3g, null max |value| %.3g "
              "(tol 1e-12)",
              linear_err, null_err)};
}

Outcome InnerEstimator() {
  const Game game = synthetic_game(UnanimityGameSpec{2, {0, 1}});
  const double band = 3.0 * std::sqrt(0.3 * 0.7 / 10000.0);
  int excursions = 0;
  double worst = 0.0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const double dev = std::abs(estimate_multilinear_e(game, 0, 0.3, 10000, RngSeed{seed}) - 0.3);
    worst = std::max(worst, dev);
    if (dev > band) ++excursions;
  }
  return {excursions <= 1, Fmt("20 seeds, %.0f beyond %.4f, max |dev| %.4f (allowed 1)",
                               excursions, band, worst)};
}

Outcome Convergence() {
  const BenchmarkProblem bench = make_benchmark(8, 100, RngSeed{1});
  int wins[3] = {0, 0, 0};
  for (std::uint64_t s = 1; s <= 20; ++s) {
    MseExperimentConfig cfg;
    cfg.example_count = 10;
    cfg.budget_grid = {100, 2000};
    cfg.seeds = {RngSeed{s}};
    cfg.selection_seed = RngSeed{s};
    const MseReport report = run_mse_experiment(bench.model, bench.data, cfg);
    for (int a = 0; a < 3; ++a) {
      const Algorithm algo = sampling_algorithms()[a];
      if (report.mean(algo, 2000) < report.mean(algo, 100)) ++wins[a];
    }
  }
  const bool pass = *std::min_element(wins, wins + 3) >= 18;
  return {pass, Fmt("budget 2000 beats 100 in castro %.0f/20, owen %.0f/20, "
                    "halved-owen %.0f/20 (need 18)",
                    wins[0], wins[1], wins[2])};
}

Outcome MseOrdering() {
  const BenchmarkProblem bench = make_benchmark(15, 200, RngSeed{1});
  int ordered = 0;
  double total_castro = 0.0, total_owen = 0.0, total_halved = 0.0;
  for (std::uint64_t s = 1; s <= 20; ++s) {
    MseExperimentConfig cfg;
    cfg.example_count = 30;
    cfg.budget_grid = {2000};
    cfg.seeds = {RngSeed{s}};
    cfg.selection_seed = RngSeed{s};
    const MseReport report = run_mse_experiment(bench.model, bench.data, cfg);
    const double castro = report.mean(Algorithm::kCastro, 2000);
    const double owen = report.mean(Algorithm::kOwen, 2000);
    const double halved = report.mean(Algorithm::kHalvedOwen, 2000);
    if (halved < owen && owen < castro) ++ordered;
    total_castro += castro;
    total_owen += owen;
    total_halved += halved;
  }
  const double ratio = total_halved / total_castro;
  return {ordered >= 16 && ratio <= 0.6,
          Fmt("ordering in %.0f/20 seeds (need 16), halved/castro = %.3f (max 0.6), "
              "mean MSE owen/castro = %.3f",
              ordered, ratio, total_owen / total_castro)};
}

Outcome VarianceShape() {
  const BenchmarkProblem bench = make_benchmark(15, 200, RngSeed{1});
  VarianceExperimentConfig cfg;
  cfg.example_count = 20;
  cfg.step_grid = step_range(2, 200, 2);
  cfg.seed = RngSeed{1};
  const VarianceReport report = run_variance_experiment(bench.model, bench.data, cfg);
  const double c20 = report.value(Algorithm::kCastro, 20);
  const double c200 = report.value(Algorithm::kCastro, 200);
  const double o20 = report.value(Algorithm::kOwen, 20);
  const double o200 = report.value(Algorithm::kOwen, 200);
  const double h20 = report.value(Algorithm::kHalvedOwen, 20);
  const double h200 = report.value(Algorithm::kHalvedOwen, 200);
  const bool pass = c200 < c20 && o200 < o20 && h200 < h20 && h200 < o200 && h200 < c200;
  return {pass, Fmt("step 20 -> 200: castro %.3g -> %.3g, owen %.3g -> %.3g", c20, c200, o20,
                    o200) +
                    Fmt(", halved-owen %.3g -> %.3g", h20, h200)};
}

int Cli(std::vector<std::string> args) {
  args.insert(args.begin(), "owenshap");
  std::ostringstream out, err;
  return run_cli(args, out, err);
}

std::string Slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome CliDeterminism() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "owenshap_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  auto path = [&](const std::string& name) { return (dir / name).string(); };
  std::ofstream(path("image.json"))
      << R"({"layers": [{"weights": [[1, -0.5, 0.25, 0]], "bias": [0], "activation": "linear"}]})";
  std::ofstream(path("image.csv")) << "p0,p1,p2,p3\n1,1,1,1\n";

  bool ok = Cli({"synth", "--features", "6", "--rows", "30", "--seed", "5", "--model-out",
                 path("m.json"), "--data-out", path("d.csv")}) == kExitOk;
  for (const std::string run : {"a", "b"}) {
    ok &= Cli({"attribute", "--model", path("m.json"), "--data", path("d.csv"), "--row", "3",
               "--algo", "halved-owen", "--samples", "400", "--seed", "9", "--out",
               path("attr_" + run + ".csv")}) == kExitOk;
    ok &= Cli({"experiment", "mse", "--model", path("m.json"), "--data", path("d.csv"),
               "--examples", "5", "--budgets", "50,500", "--seed", "9", "--out",
               path("mse_" + run + ".csv")}) == kExitOk;
    ok &= Cli({"saliency", "--model", path("m.json"), "--data", path("d.csv"), "--row", "7",
               "--algo", "owen", "--samples", "400", "--seed", "9", "--width", "3",
               "--height", "2", "--out", path("sal_" + run)}) == kExitOk;
  }
  int identical = 0;
  for (const std::string name : {"attr_%.csv", "mse_%.csv", "sal_%.csv", "sal_%.ppm"}) {
    std::string a = name, b = name;
    a.replace(a.find('%'), 1, "a");
    b.replace(b.find('%'), 1, "b");
    const std::string first = Slurp(dir / a);
    if (!first.empty() && first == Slurp(dir / b)) ++identical;
  }

  ok &= Cli({"saliency", "--model", path("image.json"), "--data", path("image.csv"), "--algo",
             "exact", "--width", "2", "--height", "2", "--out", path("golden")}) == kExitOk;
  const bool golden = Slurp(dir / "golden.ppm") ==
                      "P3\n2 2\n255\n255 0 0\n128 128 255\n255 192 192\n255 255 255\n";
  fs::remove_all(dir);
  return {ok && identical == 4 && golden,
          Fmt("%.0f/4 outputs byte-identical across runs, golden 2x2 PPM %s", identical) +
              (golden ? "matches" : "differs") + (ok ? "" : ", a CLI run failed")};
}

}  // namespace
}  // namespace owenshap

int main() {
  using owenshap::Outcome;
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {"oracle equivalence", owenshap::OracleEquivalence},
      {"multilinear identity", owenshap::MultilinearIdentity},
      {"axiom suite", owenshap::AxiomSuite},
      {"sampler exactness", owenshap::SamplerExactness},
      {"inner estimator", owenshap::InnerEstimator},
      {"convergence", owenshap::Convergence},
      {"mse ordering", owenshap::MseOrdering},
      {"variance shape", owenshap::VarianceShape},
      {"cli determinism and golden ppm", owenshap::CliDeterminism},
  };
  int failures = 0;
  int index = 1;
  for (const Criterion& c : criteria) {
    Outcome outcome{false, ""};
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    if (!outcome.pass) ++failures;
    std::printf("[%s] %d %s: %s\n", outcome.pass ? "PASS" : "FAIL", index++, c.name,
                outcome.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%d criteria passed\n", index - 1 - failures, index - 1);
  return failures == 0 ? 0 : 1;
}
