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

#ifndef OWENSHAP_EXPERIMENTS_H_
#define OWENSHAP_EXPERIMENTS_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "owenshap/core.h"
#include "owenshap/exact.h"
#include "owenshap/models.h"
#include "owenshap/rng.h"
#include "owenshap/samplers.h"

namespace owenshap {

inline const std::vector<Algorithm>& sampling_algorithms() {
  static const std::vector<Algorithm> kAll = {
      Algorithm::kCastro, Algorithm::kOwen, Algorithm::kHalvedOwen};
  return kAll;
}

// `count` distinct row indices drawn without replacement, in draw order.
std::vector<std::size_t> select_examples(std::size_t dataset_size,
                                         std::size_t count, RngSeed seed);

// Substream for one estimator run inside an experiment.
RngSeed run_seed(RngSeed master, Algorithm algo, std::size_t example,
                 std::uint64_t repetition);

struct MseRow {
  Algorithm algorithm;
  std::uint64_t equivalent_samples;
  std::size_t example;  // dataset row index
  double mse;           // averaged over seeds
};

struct MseMean {
  Algorithm algorithm;
  std::uint64_t equivalent_samples;
  double mean_mse;
};

struct MseReport {
  std::vector<std::size_t> examples;
  std::vector<MseRow> rows;

  // Mean over examples for every (algorithm, budget), in row order.
  std::vector<MseMean> means() const;
  double mean(Algorithm algo, std::uint64_t equivalent_samples) const;
};

struct MseExperimentConfig {
  std::size_t example_count = 50;
  std::vector<std::uint64_t> budget_grid = {2000};
  // Estimator repetitions; each run derives its own substream from one entry.
  std::vector<RngSeed> seeds = {RngSeed{0}};
  RngSeed selection_seed{0};
  std::vector<Algorithm> algorithms = sampling_algorithms();
  std::uint64_t m_default = 2;
  std::optional<BaselineVector> baseline;  // all zeros when empty
  ExactConfig exact;
  SamplerOptions sampler;
};

// Sampled examples are explained for the model's predicted class; each
// estimate is compared against exact Shapley values by mean squared error
// over features. Throws BudgetError if the feature count exceeds the exact
// cap.
MseReport run_mse_experiment(const MlpModel& model, const DatasetTable& data,
                             const MseExperimentConfig& cfg);

struct VarianceRow {
  Algorithm algorithm;
  std::uint64_t step;
  double avg_running_std;
};

struct VarianceReport {
  std::vector<std::size_t> examples;
  std::vector<VarianceRow> rows;

  double value(Algorithm algo, std::uint64_t step) const;
};

struct VarianceExperimentConfig {
  std::size_t example_count = 50;
  std::vector<std::uint64_t> step_grid;
  RngSeed seed{0};
  std::vector<Algorithm> algorithms = sampling_algorithms();
  std::uint64_t m_default = 2;
  std::optional<BaselineVector> baseline;
  SamplerOptions sampler;
};

// Every step of the grid is an independent estimate at that equivalent
// budget. At each step the population standard deviation of each feature's
// estimates over all steps so far is taken, then averaged over features,
// then over examples.
VarianceReport run_variance_experiment(const MlpModel& model,
                                       const DatasetTable& data,
                                       const VarianceExperimentConfig& cfg);

// "a:b:s" style grids: a, a+s, ..., <= b.
std::vector<std::uint64_t> step_range(std::uint64_t first, std::uint64_t last,
                                      std::uint64_t stride);

struct SaliencyOptions {
  std::optional<BaselineVector> baseline;
  // Explains this class instead of the predicted one.
  std::optional<std::size_t> class_index;
  SamplerOptions sampler;
  ExactConfig exact;
};

struct SaliencyMap {
  std::vector<double> values;  // raw signed attributions, one per feature
  std::size_t predicted_class = 0;
  std::size_t explained_class = 0;
  SamplingBudget budget;
  RngSeed seed;
  EstimatorDiagnostics diagnostics;
};

// Attributions of one dataset row. Throws IndexError for a missing row.
SaliencyMap run_saliency(const MlpModel& model, const DatasetTable& data,
                         std::size_t row, const SamplingBudget& budget,
                         RngSeed seed, const SaliencyOptions& opts = {});

// Seeded stand-in for a trained tabular classifier: `features` inputs (slot 0
// fixed to 1 as the bias input), two sigmoid hidden layers of 13 and 9 units,
// and a 2-way softmax output; rows are standard normal.
struct BenchmarkProblem {
  MlpModel model;
  DatasetTable data;
};
BenchmarkProblem make_benchmark(std::size_t features, std::size_t rows,
                                RngSeed seed);

}  // namespace owenshap

#endif  // OWENSHAP_EXPERIMENTS_H_
