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
#include <charconv>
#include <string>
#include <system_error>
#include <type_traits>
#include <utility>

#include "owenshap/errors.h"
#include "owenshap/models.h"

namespace owenshap {
namespace {

void CheckMembers(const std::vector<std::size_t>& members, std::size_t players,
                  const char* what) {
  if (members.empty()) {
    throw ConfigError(std::string(what) + " set must not be empty");
  }
  for (const std::size_t m : members) {
    if (m >= players) {
      throw ConfigError(std::string(what) + " member " + std::to_string(m) +
                        " out of range for " + std::to_string(players) +
                        " players");
    }
  }
}

bool AnyPresent(const CoalitionMask& mask, const std::vector<std::size_t>& set) {
  return std::any_of(set.begin(), set.end(),
                     [&](std::size_t i) { return mask.test(i); });
}

Game Build(const LinearGameSpec& spec) {
  if (spec.weights.empty()) throw ConfigError("linear game needs weights");
  return Game("linear", spec.weights.size(),
              [w = spec.weights](const CoalitionMask& mask) {
                double total = 0.0;
                for (std::size_t i = 0; i < w.size(); ++i) {
                  if (mask.test(i)) total += w[i];
                }
                return total;
              });
}

Game Build(const UnanimityGameSpec& spec) {
  CheckMembers(spec.members, spec.players, "unanimity member");
  return Game("unanimity", spec.players,
              [members = spec.members](const CoalitionMask& mask) {
                for (const std::size_t i : members) {
                  if (!mask.test(i)) return 0.0;
                }
                return 1.0;
              });
}

Game Build(const GloveGameSpec& spec) {
  CheckMembers(spec.left, spec.players, "glove left");
  CheckMembers(spec.right, spec.players, "glove right");
  return Game("glove", spec.players,
              [left = spec.left, right = spec.right](const CoalitionMask& mask) {
                return AnyPresent(mask, left) && AnyPresent(mask, right) ? 1.0
                                                                         : 0.0;
              });
}

Game Build(const WeightedVotingGameSpec& spec) {
  if (spec.weights.empty()) throw ConfigError("voting game needs weights");
  if (!(spec.quota > 0.0)) throw ConfigError("voting quota must be positive");
  return Game("weighted_voting", spec.weights.size(),
              [w = spec.weights, quota = spec.quota](const CoalitionMask& mask) {
                double total = 0.0;
                for (std::size_t i = 0; i < w.size(); ++i) {
                  if (mask.test(i)) total += w[i];
                }
                return total >= quota ? 1.0 : 0.0;
              });
}

template <typename T>
T ParseScalar(std::string_view text, std::string_view spec) {
  T value{};
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc() || ptr != end) {
    throw ConfigError("cannot parse '" + std::string(text) +
                      "' in game spec '" + std::string(spec) + "'");
  }
  return value;
}

template <typename T>
std::vector<T> ParseList(std::string_view text, std::string_view spec) {
  std::vector<T> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    out.push_back(ParseScalar<T>(text.substr(start, comma - start), spec));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::vector<std::string_view> SplitColon(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t colon = text.find(':', start);
    parts.push_back(text.substr(start, colon - start));
    if (colon == std::string_view::npos) break;
    start = colon + 1;
  }
  return parts;
}

}  // namespace

Game synthetic_game(const SyntheticGameSpec& spec) {
  return std::visit([](const auto& s) { return Build(s); }, spec);
}

SyntheticGameSpec parse_game_spec(std::string_view text) {
  const auto parts = SplitColon(text);
  const std::string_view kind = parts[0];
  const auto expect = [&](std::size_t n) {
    if (parts.size() != n) {
      throw ConfigError("malformed game spec '" + std::string(text) + "'");
    }
  };
  if (kind == "linear") {
    expect(2);
    return LinearGameSpec{ParseList<double>(parts[1], text)};
  }
  if (kind == "unanimity") {
    expect(3);
    return UnanimityGameSpec{ParseScalar<std::size_t>(parts[1], text),
                             ParseList<std::size_t>(parts[2], text)};
  }
  if (kind == "glove") {
    expect(3);
    const std::size_t bar = parts[2].find('|');
    if (bar == std::string_view::npos) {
      throw ConfigError("glove spec needs 'left|right' holders: '" +
                        std::string(text) + "'");
    }
    return GloveGameSpec{ParseScalar<std::size_t>(parts[1], text),
                         ParseList<std::size_t>(parts[2].substr(0, bar), text),
                         ParseList<std::size_t>(parts[2].substr(bar + 1), text)};
  }
  if (kind == "voting") {
    expect(3);
    return WeightedVotingGameSpec{ParseList<double>(parts[2], text),
                                  ParseScalar<double>(parts[1], text)};
  }
  throw ConfigError("unknown game kind '" + std::string(kind) +
                    "'; valid kinds: linear, unanimity, glove, voting");
}

}  // namespace owenshap
