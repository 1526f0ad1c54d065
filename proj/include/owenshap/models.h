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

#ifndef OWENSHAP_MODELS_H_
#define OWENSHAP_MODELS_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "owenshap/core.h"
#include "owenshap/rng.h"

namespace owenshap {

enum class Activation { kSigmoid, kSoftmax, kLinear };

std::string_view activation_name(Activation act);

struct DenseLayer {
  std::size_t inputs = 0;
  std::size_t outputs = 0;
  // Row-major, outputs x inputs.
  std::vector<double> weights;
  std::vector<double> bias;
  Activation activation = Activation::kLinear;

  double weight(std::size_t out, std::size_t in) const {
    return weights[out * inputs + in];
  }
};

// Feed-forward network applying activation(W x + b) layer by layer. Immutable
// once constructed.
class MlpModel {
 public:
  // Validates shapes, finiteness, and that softmax only appears last. Errors
  // name the offending layer index.
  explicit MlpModel(std::vector<DenseLayer> layers);

  std::size_t input_dim() const { return layers_.front().inputs; }
  std::size_t output_dim() const { return layers_.back().outputs; }
  const std::vector<DenseLayer>& layers() const { return layers_; }

 private:
  std::vector<DenseLayer> layers_;
};

// Reusable buffers for allocation-free forward passes.
struct ForwardWorkspace {
  std::vector<double> front;
  std::vector<double> back;
};

std::vector<double> mlp_forward(const MlpModel& model,
                                std::span<const double> x);
// Result views into `ws` and is valid until its next use.
std::span<const double> mlp_forward(const MlpModel& model,
                                    std::span<const double> x,
                                    ForwardWorkspace& ws);

// Index of the largest output (first one on ties).
std::size_t predicted_class(const MlpModel& model, std::span<const double> x);

// JSON model files: {"layers": [{"weights": [[...], ...], "bias": [...],
// "activation": "sigmoid" | "softmax" | "linear"}, ...]}.
MlpModel load_model(std::string_view content);
MlpModel load_model_file(const std::string& path);
std::string save_model(const MlpModel& model);

// Random weights on a fixed architecture: every weight ~ N(0, scale^2 /
// fan_in), biases ~ N(0, scale^2). Hidden layers use `hidden`, the last layer
// uses `output`.
MlpModel random_mlp(std::span<const std::size_t> layer_sizes, RngSeed seed,
                    double scale = 1.0,
                    Activation hidden = Activation::kSigmoid,
                    Activation output = Activation::kSoftmax);

struct DatasetTable {
  std::vector<std::string> feature_names;
  std::vector<FeatureVector> rows;
  std::optional<std::vector<int>> labels;

  std::size_t feature_count() const { return feature_names.size(); }
  std::size_t size() const { return rows.size(); }
};

// CSV with a header line. A column named "label" holds integer classes; every
// other column is a real-valued feature, in file order.
DatasetTable load_dataset(std::string_view content);
DatasetTable load_dataset_file(const std::string& path);
std::string save_dataset(const DatasetTable& table);

// Game whose value at a coalition is the model's `class_index` output on the
// masked input apply_mask(mask, x, b).
Game make_game(const MlpModel& model, const FeatureVector& x,
               const BaselineVector& b, std::size_t class_index);

struct LinearGameSpec {
  std::vector<double> weights;
};
struct UnanimityGameSpec {
  std::size_t players = 0;
  std::vector<std::size_t> members;
};
struct GloveGameSpec {
  std::size_t players = 0;
  std::vector<std::size_t> left;
  std::vector<std::size_t> right;
};
struct WeightedVotingGameSpec {
  std::vector<double> weights;
  double quota = 0.0;
};
using SyntheticGameSpec = std::variant<LinearGameSpec, UnanimityGameSpec,
                                       GloveGameSpec, WeightedVotingGameSpec>;

// Closed-form cooperative games used as oracles.
Game synthetic_game(const SyntheticGameSpec& spec);

// Parses the CLI spelling of a synthetic game:
//   linear:w0,w1,...        unanimity:N:i,j,...
//   glove:N:l,...|r,...     voting:QUOTA:w0,w1,...
SyntheticGameSpec parse_game_spec(std::string_view text);

}  // namespace owenshap

#endif  // OWENSHAP_MODELS_H_
