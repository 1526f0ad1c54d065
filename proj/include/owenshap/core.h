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

#ifndef OWENSHAP_CORE_H_
#define OWENSHAP_CORE_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace owenshap {

// Input tuple X = (x_0, ..., x_n). Index 0 is the bias slot by convention but
// is treated like any other feature.
class FeatureVector {
 public:
  // Requires at least two entries, all finite.
  explicit FeatureVector(std::vector<double> values);

  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  std::span<const double> values() const { return values_; }

  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;

 private:
  std::vector<double> values_;
};

// Values substituted for absent features.
class BaselineVector {
 public:
  explicit BaselineVector(std::vector<double> values);
  static BaselineVector Zeros(std::size_t size);

  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  std::span<const double> values() const { return values_; }

 private:
  std::vector<double> values_;
};

// Presence bit per feature.
class CoalitionMask {
 public:
  CoalitionMask() = default;
  explicit CoalitionMask(std::size_t size, bool present = false)
      : bits_(size, present ? 1 : 0) {}
  // Bit i of `bits` becomes feature i. `size` <= 64.
  static CoalitionMask FromInteger(std::uint64_t bits, std::size_t size);
  static CoalitionMask Full(std::size_t size) { return CoalitionMask(size, true); }
  static CoalitionMask Empty(std::size_t size) { return CoalitionMask(size, false); }

  std::size_t size() const { return bits_.size(); }
  bool test(std::size_t i) const { return bits_[i] != 0; }
  void set(std::size_t i, bool present = true) { bits_[i] = present ? 1 : 0; }
  std::size_t count() const;

  // Copy with bit j forced to present (the coalition A u {x_j}).
  CoalitionMask with_feature(std::size_t j) const;
  // Copy with bit j forced to absent.
  CoalitionMask without_feature(std::size_t j) const;
  // 1 - I.
  CoalitionMask complement() const;

  // Overwrites this mask from an integer without reallocating.
  void assign_integer(std::uint64_t bits);

  friend bool operator==(const CoalitionMask&, const CoalitionMask&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

// result_i = mask_i ? x_i : b_i. Throws DimensionError on length mismatch.
FeatureVector apply_mask(const CoalitionMask& mask, const FeatureVector& x,
                         const BaselineVector& b);

// Allocation-free variant used on hot paths; `out` must have the same length.
void apply_mask_into(const CoalitionMask& mask, std::span<const double> x,
                     std::span<const double> b, std::span<double> out);

// Throws IndexError if j is out of range.
CoalitionMask with_feature(const CoalitionMask& mask, std::size_t j);

// A scalar set function over coalitions of `arity` players. Evaluation must be
// deterministic and safe to call from several threads at once.
class Game {
 public:
  using Evaluator = std::function<double(const CoalitionMask&)>;

  Game(std::string name, std::size_t arity, Evaluator evaluator);

  double operator()(const CoalitionMask& mask) const;
  double evaluate(const CoalitionMask& mask) const { return (*this)(mask); }

  std::size_t arity() const { return arity_; }
  const std::string& name() const { return name_; }

 private:
  std::string name_;
  std::size_t arity_;
  Evaluator evaluator_;
};

// a*first + second, evaluated coalition-wise.
Game combine_games(const Game& first, double a, const Game& second);

enum class Algorithm { kExact, kCastro, kOwen, kHalvedOwen };

// "exact", "castro", "owen", "halved-owen".
std::string_view algorithm_name(Algorithm algo);
// Accepts the names above ("halved_owen" too). Throws ConfigError listing the
// valid names otherwise.
Algorithm parse_algorithm(std::string_view name);

struct EstimatorDiagnostics {
  std::uint64_t model_evaluations = 0;
  std::uint64_t marginal_samples_per_feature = 0;
  // Owen variants only.
  std::uint64_t grid_points_visited = 0;
};

struct ShapleyVector {
  std::vector<double> attributions;
  Algorithm algorithm = Algorithm::kExact;
  std::uint64_t seed = 0;
  EstimatorDiagnostics diagnostics;

  std::size_t size() const { return attributions.size(); }
  double operator[](std::size_t i) const { return attributions[i]; }
};

// Parameters of one estimator run. `requested_equivalent` / `realized_equivalent`
// record the equivalent-sample translation when the budget came from one.
struct SamplingBudget {
  Algorithm kind = Algorithm::kExact;
  std::uint64_t castro_permutations = 0;  // M_c
  std::uint64_t grid_resolution = 0;      // Q
  std::uint64_t inner_samples = 0;        // M
  std::uint64_t requested_equivalent = 0;
  std::uint64_t realized_equivalent = 0;

  static SamplingBudget Exact();
  static SamplingBudget Castro(std::uint64_t permutations);
  static SamplingBudget Owen(std::uint64_t q, std::uint64_t m);
  static SamplingBudget HalvedOwen(std::uint64_t q, std::uint64_t m);

  // Throws BudgetError when a count required by `kind` is zero.
  void validate() const;
};

}  // namespace owenshap

#endif  // OWENSHAP_CORE_H_
