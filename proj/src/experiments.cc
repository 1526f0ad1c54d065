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

#include "owenshap/experiments.h"

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <string>
#include <utility>

#include "owenshap/errors.h"

namespace owenshap {
namespace {

// Hidden-layer widths of the benchmark classifier.
constexpr std::size_t kBenchmarkHidden1 = 13;
constexpr std::size_t kBenchmarkHidden2 = 9;
// Weight scale for the benchmark model; large enough that the sigmoids leave
// their linear regime.
constexpr double kBenchmarkScale = 3.0;

BaselineVector BaselineFor(const std::optional<BaselineVector>& baseline,
                           std::size_t features) {
  if (!baseline) return BaselineVector::Zeros(features);
  if (baseline->size() != features) {
    throw DimensionError("baseline has " + std::to_string(baseline->size()) +
                         " entries, dataset rows have " +
                         std::to_string(features));
  }
  return *baseline;
}

void CheckModelMatchesData(const MlpModel& model, const DatasetTable& data) {
  if (model.input_dim() != data.feature_count()) {
    throw DimensionError("model expects " + std::to_string(model.input_dim()) +
                         " inputs, dataset has " +
                         std::to_string(data.feature_count()) + " features");
  }
}

Game ExplainPredicted(const MlpModel& model, const FeatureVector& x,
                      const BaselineVector& b) {
  return make_game(model, x, b, predicted_class(model, x.values()));
}

// Runs body(i) for i in [0, n) across threads, rethrowing the first failure.
template <typename Body>
void ParallelFor(std::size_t n, Body&& body) {
  std::exception_ptr failure;
  std::mutex mu;
  const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard<std::mutex> lock(mu);
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

double MeanSquaredError(std::span<const double> estimate,
                        std::span<const double> truth) {
  double total = 0.0;
  for (std::size_t j = 0; j < truth.size(); ++j) {
    const double d = estimate[j] - truth[j];
    total += d * d;
  }
  return total / static_cast<double>(truth.size());
}

}  // namespace

std::vector<std::size_t> select_examples(std::size_t dataset_size,
                                         std::size_t count, RngSeed seed) {
  if (count > dataset_size) {
    throw ConfigError("requested " + std::to_string(count) +
                      " examples from a dataset of " +
                      std::to_string(dataset_size) + " rows");
  }
  std::vector<std::size_t> pool(dataset_size);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  Rng rng(derive_seed(
      seed, {static_cast<std::uint64_t>(StreamTag::kExampleSelection)}));
  for (std::size_t i = 0; i < count; ++i) {
    const auto k = i + static_cast<std::size_t>(rng.below(dataset_size - i));
    std::swap(pool[i], pool[k]);
  }
  pool.resize(count);
  return pool;
}

RngSeed run_seed(RngSeed master, Algorithm algo, std::size_t example,
                 std::uint64_t repetition) {
  return derive_seed(master, {static_cast<std::uint64_t>(algo) + 1, example,
                              repetition});
}

std::vector<MseMean> MseReport::means() const {
  std::vector<MseMean> out;
  std::vector<std::size_t> counts;
  for (const MseRow& r : rows) {
    auto it = std::find_if(out.begin(), out.end(), [&](const MseMean& m) {
      return m.algorithm == r.algorithm &&
             m.equivalent_samples == r.equivalent_samples;
    });
    if (it == out.end()) {
      out.push_back({r.algorithm, r.equivalent_samples, 0.0});
      counts.push_back(0);
      it = out.end() - 1;
    }
    const auto idx = static_cast<std::size_t>(it - out.begin());
    it->mean_mse += r.mse;
    ++counts[idx];
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i].mean_mse /= static_cast<double>(counts[i]);
  }
  return out;
}

double MseReport::mean(Algorithm algo, std::uint64_t equivalent_samples) const {
  for (const MseMean& m : means()) {
    if (m.algorithm == algo && m.equivalent_samples == equivalent_samples) {
      return m.mean_mse;
    }
  }
  throw ConfigError("no MSE rows for " + std::string(algorithm_name(algo)) +
                    " at budget " + std::to_string(equivalent_samples));
}

MseReport run_mse_experiment(const MlpModel& model, const DatasetTable& data,
                             const MseExperimentConfig& cfg) {
  CheckModelMatchesData(model, data);
  check_exact_capacity(data.feature_count(), cfg.exact);
  if (cfg.budget_grid.empty()) throw ConfigError("empty budget grid");
  if (cfg.seeds.empty()) throw ConfigError("no seeds given");
  for (const Algorithm a : cfg.algorithms) {
    if (a == Algorithm::kExact) {
      throw ConfigError("the exact engine is the reference, not a candidate");
    }
  }
  // Translate (and validate) every budget before any work starts.
  std::vector<std::vector<SamplingBudget>> budgets;
  for (const Algorithm a : cfg.algorithms) {
    auto& per_algo = budgets.emplace_back();
    for (const std::uint64_t eq : cfg.budget_grid) {
      per_algo.push_back(budget_to_params(a, eq, cfg.m_default));
    }
  }
  const BaselineVector baseline = BaselineFor(cfg.baseline, data.feature_count());

  MseReport report;
  report.examples =
      select_examples(data.size(), cfg.example_count, cfg.selection_seed);

  const std::size_t n_algo = cfg.algorithms.size();
  const std::size_t n_budget = cfg.budget_grid.size();
  // mse[example][algo][budget]
  std::vector<std::vector<double>> mse(report.examples.size(),
                                       std::vector<double>(n_algo * n_budget));
  ParallelFor(report.examples.size(), [&](std::size_t e) {
    const std::size_t row = report.examples[e];
    const Game game = ExplainPredicted(model, data.rows[row], baseline);
    const ShapleyVector truth =
        reference::exact_shapley_serial(game, cfg.exact);
    for (std::size_t a = 0; a < n_algo; ++a) {
      for (std::size_t b = 0; b < n_budget; ++b) {
        double total = 0.0;
        for (std::size_t r = 0; r < cfg.seeds.size(); ++r) {
          const RngSeed seed =
              derive_seed(run_seed(cfg.seeds[r], cfg.algorithms[a], row, r),
                          {cfg.budget_grid[b]});
          const ShapleyVector est =
              estimate_shapley(game, budgets[a][b], seed, cfg.sampler);
          total += MeanSquaredError(est.attributions, truth.attributions);
        }
        mse[e][a * n_budget + b] = total / static_cast<double>(cfg.seeds.size());
      }
    }
  });

  for (std::size_t a = 0; a < n_algo; ++a) {
    for (std::size_t b = 0; b < n_budget; ++b) {
      for (std::size_t e = 0; e < report.examples.size(); ++e) {
        report.rows.push_back({cfg.algorithms[a], cfg.budget_grid[b],
                               report.examples[e], mse[e][a * n_budget + b]});
      }
    }
  }
  return report;
}

std::vector<std::uint64_t> step_range(std::uint64_t first, std::uint64_t last,
                                      std::uint64_t stride) {
  if (stride == 0) throw ConfigError("step stride must be positive");
  std::vector<std::uint64_t> out;
  for (std::uint64_t s = first; s <= last; s += stride) out.push_back(s);
  return out;
}

double VarianceReport::value(Algorithm algo, std::uint64_t step) const {
  for (const VarianceRow& r : rows) {
    if (r.algorithm == algo && r.step == step) return r.avg_running_std;
  }
  throw ConfigError("no variance row for " + std::string(algorithm_name(algo)) +
                    " at step " + std::to_string(step));
}

VarianceReport run_variance_experiment(const MlpModel& model,
                                       const DatasetTable& data,
                                       const VarianceExperimentConfig& cfg) {
  CheckModelMatchesData(model, data);
  const auto& steps = cfg.step_grid;
  if (steps.size() < 2) {
    throw ConfigError("variance analysis needs at least 2 steps");
  }
  for (std::size_t i = 1; i < steps.size(); ++i) {
    if (steps[i] <= steps[i - 1]) {
      throw ConfigError("step grid must be strictly increasing");
    }
  }
  std::vector<std::vector<SamplingBudget>> budgets;
  for (const Algorithm a : cfg.algorithms) {
    if (a == Algorithm::kExact) {
      throw ConfigError("variance analysis applies to sampling algorithms only");
    }
    auto& per_algo = budgets.emplace_back();
    for (const std::uint64_t s : steps) {
      if (a != Algorithm::kCastro && s % cfg.m_default != 0) {
        throw ConfigError("step " + std::to_string(s) +
                          " is not a multiple of M=" +
                          std::to_string(cfg.m_default));
      }
      per_algo.push_back(budget_to_params(a, s, cfg.m_default));
    }
  }
  const BaselineVector baseline = BaselineFor(cfg.baseline, data.feature_count());

  VarianceReport report;
  report.examples = select_examples(data.size(), cfg.example_count, cfg.seed);
  const std::size_t n_algo = cfg.algorithms.size();
  const std::size_t n_steps = steps.size();
  const std::size_t features = data.feature_count();

  // curve[example][algo * n_steps + step]
  std::vector<std::vector<double>> curve(report.examples.size(),
                                         std::vector<double>(n_algo * n_steps));
  ParallelFor(report.examples.size(), [&](std::size_t e) {
    const std::size_t row = report.examples[e];
    const Game game = ExplainPredicted(model, data.rows[row], baseline);
    for (std::size_t a = 0; a < n_algo; ++a) {
      std::vector<double> mean(features, 0.0);
      std::vector<double> m2(features, 0.0);
      for (std::size_t s = 0; s < n_steps; ++s) {
        const ShapleyVector est =
            estimate_shapley(game, budgets[a][s],
                             run_seed(cfg.seed, cfg.algorithms[a], row, s),
                             cfg.sampler);
        const auto k = static_cast<double>(s + 1);
        double std_sum = 0.0;
        for (std::size_t j = 0; j < features; ++j) {
          const double delta = est[j] - mean[j];
          mean[j] += delta / k;
          m2[j] += delta * (est[j] - mean[j]);
          std_sum += std::sqrt(m2[j] / k);
        }
        curve[e][a * n_steps + s] = std_sum / static_cast<double>(features);
      }
    }
  });

  for (std::size_t a = 0; a < n_algo; ++a) {
    for (std::size_t s = 0; s < n_steps; ++s) {
      double total = 0.0;
      for (const auto& c : curve) total += c[a * n_steps + s];
      report.rows.push_back({cfg.algorithms[a], steps[s],
                             total / static_cast<double>(curve.size())});
    }
  }
  return report;
}

SaliencyMap run_saliency(const MlpModel& model, const DatasetTable& data,
                         std::size_t row, const SamplingBudget& budget,
                         RngSeed seed, const SaliencyOptions& opts) {
  CheckModelMatchesData(model, data);
  if (row >= data.size()) {
    throw IndexError("row " + std::to_string(row) + " out of range for " +
                     std::to_string(data.size()) + " rows");
  }
  const FeatureVector& x = data.rows[row];
  const BaselineVector baseline = BaselineFor(opts.baseline, x.size());
  SaliencyMap map;
  map.predicted_class = predicted_class(model, x.values());
  map.explained_class = opts.class_index.value_or(map.predicted_class);
  map.budget = budget;
  map.seed = seed;
  const Game game = make_game(model, x, baseline, map.explained_class);
  const ShapleyVector sv = budget.kind == Algorithm::kExact
                               ? exact_shapley(game, opts.exact)
                               : estimate_shapley(game, budget, seed, opts.sampler);
  map.values = sv.attributions;
  map.diagnostics = sv.diagnostics;
  return map;
}

BenchmarkProblem make_benchmark(std::size_t features, std::size_t rows,
                                RngSeed seed) {
  if (features < 2) throw ConfigError("benchmark needs at least 2 features");
  const std::size_t sizes[] = {features, kBenchmarkHidden1, kBenchmarkHidden2, 2};
  MlpModel model = random_mlp(sizes, derive_seed(seed, {1}), kBenchmarkScale);

  DatasetTable data;
  data.feature_names.push_back("bias");
  for (std::size_t j = 1; j < features; ++j) {
    data.feature_names.push_back("f" + std::to_string(j));
  }
  Rng rng(derive_seed(seed, {2}));
  for (std::size_t r = 0; r < rows; ++r) {
    std::vector<double> values(features);
    values[0] = 1.0;
    for (std::size_t j = 1; j < features; ++j) values[j] = rng.normal();
    data.rows.emplace_back(std::move(values));
  }
  return {std::move(model), std::move(data)};
}

}  // namespace owenshap
