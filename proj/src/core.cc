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

#include "owenshap/core.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "owenshap/errors.h"

namespace owenshap {
namespace {

void CheckFinite(std::span<const double> values, const char* what) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw DomainError(std::string(what) + ": entry " + std::to_string(i) +
                        " is not finite");
    }
  }
}

}  // namespace

FeatureVector::FeatureVector(std::vector<double> values)
    : values_(std::move(values)) {
  if (values_.size() < 2) {
    throw DimensionError("FeatureVector needs at least 2 entries, got " +
                         std::to_string(values_.size()));
  }
  CheckFinite(values_, "FeatureVector");
}

BaselineVector::BaselineVector(std::vector<double> values)
    : values_(std::move(values)) {
  CheckFinite(values_, "BaselineVector");
}

BaselineVector BaselineVector::Zeros(std::size_t size) {
  return BaselineVector(std::vector<double>(size, 0.0));
}

CoalitionMask CoalitionMask::FromInteger(std::uint64_t bits, std::size_t size) {
  if (size > 64) {
    throw DimensionError("CoalitionMask::FromInteger supports at most 64 bits");
  }
  CoalitionMask mask(size);
  mask.assign_integer(bits);
  return mask;
}

void CoalitionMask::assign_integer(std::uint64_t bits) {
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    bits_[i] = static_cast<std::uint8_t>((bits >> i) & 1u);
  }
}

std::size_t CoalitionMask::count() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), 1));
}

CoalitionMask CoalitionMask::with_feature(std::size_t j) const {
  CoalitionMask out = *this;
  out.bits_.at(j) = 1;
  return out;
}

CoalitionMask CoalitionMask::without_feature(std::size_t j) const {
  CoalitionMask out = *this;
  out.bits_.at(j) = 0;
  return out;
}

CoalitionMask CoalitionMask::complement() const {
  CoalitionMask out = *this;
  for (auto& b : out.bits_) b = static_cast<std::uint8_t>(1u - b);
  return out;
}

void apply_mask_into(const CoalitionMask& mask, std::span<const double> x,
                     std::span<const double> b, std::span<double> out) {
  if (mask.size() != x.size() || x.size() != b.size() ||
      out.size() != x.size()) {
    throw DimensionError("apply_mask: lengths differ (mask " +
                         std::to_string(mask.size()) + ", x " +
                         std::to_string(x.size()) + ", baseline " +
                         std::to_string(b.size()) + ")");
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    out[i] = mask.test(i) ? x[i] : b[i];
  }
}

FeatureVector apply_mask(const CoalitionMask& mask, const FeatureVector& x,
                         const BaselineVector& b) {
  std::vector<double> out(x.size());
  apply_mask_into(mask, x.values(), b.values(), out);
  return FeatureVector(std::move(out));
}

CoalitionMask with_feature(const CoalitionMask& mask, std::size_t j) {
  if (j >= mask.size()) {
    throw IndexError("feature index " + std::to_string(j) +
                     " out of range for " + std::to_string(mask.size()) +
                     " features");
  }
  return mask.with_feature(j);
}

Game::Game(std::string name, std::size_t arity, Evaluator evaluator)
    : name_(std::move(name)), arity_(arity), evaluator_(std::move(evaluator)) {
  if (arity_ < 1) throw ConfigError("game arity must be positive");
  if (!evaluator_) throw ConfigError("game '" + name_ + "' has no evaluator");
}

double Game::operator()(const CoalitionMask& mask) const {
  if (mask.size() != arity_) {
    throw DimensionError("game '" + name_ + "' has arity " +
                         std::to_string(arity_) + " but mask has " +
                         std::to_string(mask.size()) + " bits");
  }
  return evaluator_(mask);
}

Game combine_games(const Game& first, double a, const Game& second) {
  if (first.arity() != second.arity()) {
    throw DimensionError("cannot combine games of different arity");
  }
  return Game(first.name() + "+" + second.name(), first.arity(),
              [first, a, second](const CoalitionMask& m) {
                return a * first(m) + second(m);
              });
}

std::string_view algorithm_name(Algorithm algo) {
  switch (algo) {
    case Algorithm::kExact:
      return "exact";
    case Algorithm::kCastro:
      return "castro";
    case Algorithm::kOwen:
      return "owen";
    case Algorithm::kHalvedOwen:
      return "halved-owen";
  }
  return "unknown";
}

Algorithm parse_algorithm(std::string_view name) {
  if (name == "exact") return Algorithm::kExact;
  if (name == "castro") return Algorithm::kCastro;
  if (name == "owen") return Algorithm::kOwen;
  if (name == "halved-owen" || name == "halved_owen") {
    return Algorithm::kHalvedOwen;
  }
  throw ConfigError("unknown algorithm '" + std::string(name) +
                    "'; valid names: exact, castro, owen, halved-owen");
}

SamplingBudget SamplingBudget::Exact() { return SamplingBudget{}; }

SamplingBudget SamplingBudget::Castro(std::uint64_t permutations) {
  SamplingBudget b;
  b.kind = Algorithm::kCastro;
  b.castro_permutations = permutations;
  b.requested_equivalent = b.realized_equivalent = permutations;
  b.validate();
  return b;
}

SamplingBudget SamplingBudget::Owen(std::uint64_t q, std::uint64_t m) {
  SamplingBudget b;
  b.kind = Algorithm::kOwen;
  b.grid_resolution = q;
  b.inner_samples = m;
  b.requested_equivalent = b.realized_equivalent = q * m;
  b.validate();
  return b;
}

SamplingBudget SamplingBudget::HalvedOwen(std::uint64_t q, std::uint64_t m) {
  SamplingBudget b = Owen(q, m);
  b.kind = Algorithm::kHalvedOwen;
  return b;
}

void SamplingBudget::validate() const {
  switch (kind) {
    case Algorithm::kExact:
      return;
    case Algorithm::kCastro:
      if (castro_permutations < 1) {
        throw BudgetError("castro sampling needs at least one permutation");
      }
      return;
    case Algorithm::kOwen:
    case Algorithm::kHalvedOwen:
      if (grid_resolution < 1 || inner_samples < 1) {
        throw BudgetError(std::string(algorithm_name(kind)) +
                          " sampling needs Q >= 1 and M >= 1 (got Q=" +
                          std::to_string(grid_resolution) +
                          ", M=" + std::to_string(inner_samples) + ")");
      }
      return;
  }
}

}  // namespace owenshap
