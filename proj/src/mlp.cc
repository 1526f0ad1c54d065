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

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>
#include <utility>

#include "owenshap/errors.h"
#include "owenshap/models.h"

namespace owenshap {
namespace {

std::string LayerPrefix(std::size_t index) {
  return "layer " + std::to_string(index) + ": ";
}

inline double Sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

void SoftmaxInPlace(std::span<double> v) {
  const double top = *std::max_element(v.begin(), v.end());
  double total = 0.0;
  for (double& x : v) {
    x = std::exp(x - top);
    total += x;
  }
  for (double& x : v) x /= total;
}

void ApplyLayer(const DenseLayer& layer, std::span<const double> in,
                std::span<double> out) {
  for (std::size_t o = 0; o < layer.outputs; ++o) {
    const double* row = layer.weights.data() + o * layer.inputs;
    double z = layer.bias[o];
    for (std::size_t i = 0; i < layer.inputs; ++i) z += row[i] * in[i];
    out[o] = z;
  }
  switch (layer.activation) {
    case Activation::kSigmoid:
      for (double& v : out) v = Sigmoid(v);
      break;
    case Activation::kSoftmax:
      SoftmaxInPlace(out);
      break;
    case Activation::kLinear:
      break;
  }
}

}  // namespace

std::string_view activation_name(Activation act) {
  switch (act) {
    case Activation::kSigmoid:
      return "sigmoid";
    case Activation::kSoftmax:
      return "softmax";
    case Activation::kLinear:
      return "linear";
  }
  return "unknown";
}

MlpModel::MlpModel(std::vector<DenseLayer> layers) : layers_(std::move(layers)) {
  if (layers_.empty()) throw ParseError("model has no layers");
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    const DenseLayer& layer = layers_[l];
    if (layer.inputs == 0 || layer.outputs == 0) {
      throw ParseError(LayerPrefix(l) + "empty weight matrix");
    }
    if (layer.weights.size() != layer.inputs * layer.outputs) {
      throw ParseError(LayerPrefix(l) + "weight matrix is not " +
                       std::to_string(layer.outputs) + "x" +
                       std::to_string(layer.inputs));
    }
    if (layer.bias.size() != layer.outputs) {
      throw ParseError(LayerPrefix(l) + "bias has " +
                       std::to_string(layer.bias.size()) +
                       " entries, expected " + std::to_string(layer.outputs));
    }
    if (l > 0 && layer.inputs != layers_[l - 1].outputs) {
      throw ParseError(LayerPrefix(l) + "input dimension " +
                       std::to_string(layer.inputs) +
                       " does not match layer " + std::to_string(l - 1) +
                       " output dimension " +
                       std::to_string(layers_[l - 1].outputs));
    }
    if (layer.activation == Activation::kSoftmax && l + 1 != layers_.size()) {
      throw ParseError(LayerPrefix(l) +
                       "softmax is only allowed on the final layer");
    }
    const auto finite = [](double v) { return std::isfinite(v); };
    if (!std::all_of(layer.weights.begin(), layer.weights.end(), finite) ||
        !std::all_of(layer.bias.begin(), layer.bias.end(), finite)) {
      throw ParseError(LayerPrefix(l) + "non-finite weight or bias");
    }
  }
}

std::span<const double> mlp_forward(const MlpModel& model,
                                    std::span<const double> x,
                                    ForwardWorkspace& ws) {
  if (x.size() != model.input_dim()) {
    throw DimensionError("model expects " + std::to_string(model.input_dim()) +
                         " inputs, got " + std::to_string(x.size()));
  }
  std::span<const double> in = x;
  std::vector<double>* targets[2] = {&ws.front, &ws.back};
  const auto& layers = model.layers();
  for (std::size_t l = 0; l < layers.size(); ++l) {
    std::vector<double>& out = *targets[l % 2];
    out.resize(layers[l].outputs);
    ApplyLayer(layers[l], in, out);
    for (const double v : out) {
      if (!std::isfinite(v)) {
        throw NumericError(LayerPrefix(l) + "non-finite activation");
      }
    }
    in = out;
  }
  return in;
}

std::vector<double> mlp_forward(const MlpModel& model,
                                std::span<const double> x) {
  ForwardWorkspace ws;
  const auto out = mlp_forward(model, x, ws);
  return {out.begin(), out.end()};
}

std::size_t predicted_class(const MlpModel& model, std::span<const double> x) {
  const auto out = mlp_forward(model, x);
  return static_cast<std::size_t>(
      std::max_element(out.begin(), out.end()) - out.begin());
}

MlpModel random_mlp(std::span<const std::size_t> layer_sizes, RngSeed seed,
                    double scale, Activation hidden, Activation output) {
  if (layer_sizes.size() < 2) {
    throw ConfigError("random_mlp needs at least input and output sizes");
  }
  Rng rng(derive_seed(seed, {static_cast<std::uint64_t>(StreamTag::kSynthesis)}));
  std::vector<DenseLayer> layers;
  for (std::size_t l = 0; l + 1 < layer_sizes.size(); ++l) {
    DenseLayer layer;
    layer.inputs = layer_sizes[l];
    layer.outputs = layer_sizes[l + 1];
    layer.activation = l + 2 == layer_sizes.size() ? output : hidden;
    const double w_std = scale / std::sqrt(static_cast<double>(layer.inputs));
    layer.weights.resize(layer.inputs * layer.outputs);
    for (double& w : layer.weights) w = w_std * rng.normal();
    layer.bias.resize(layer.outputs);
    for (double& b : layer.bias) b = scale * rng.normal();
    layers.push_back(std::move(layer));
  }
  return MlpModel(std::move(layers));
}

Game make_game(const MlpModel& model, const FeatureVector& x,
               const BaselineVector& b, std::size_t class_index) {
  if (x.size() != model.input_dim()) {
    throw ConfigError("model expects " + std::to_string(model.input_dim()) +
                      " inputs but the instance has " +
                      std::to_string(x.size()) + " features");
  }
  if (b.size() != x.size()) {
    throw ConfigError("baseline has " + std::to_string(b.size()) +
                      " entries but the instance has " +
                      std::to_string(x.size()));
  }
  if (class_index >= model.output_dim()) {
    throw ConfigError("class index " + std::to_string(class_index) +
                      " out of range for " +
                      std::to_string(model.output_dim()) + " outputs");
  }
  struct State {
    MlpModel model;
    std::vector<double> x;
    std::vector<double> b;
    std::size_t class_index;
  };
  auto state = std::make_shared<const State>(
      State{model, {x.values().begin(), x.values().end()},
            {b.values().begin(), b.values().end()}, class_index});
  return Game("mlp[class " + std::to_string(class_index) + "]", x.size(),
              [state](const CoalitionMask& mask) {
                thread_local std::vector<double> input;
                thread_local ForwardWorkspace ws;
                input.resize(state->x.size());
                apply_mask_into(mask, state->x, state->b, input);
                return mlp_forward(state->model, input, ws)[state->class_index];
              });
}

}  // namespace owenshap
