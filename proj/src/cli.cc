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

#include "owenshap/cli.h"

#include <charconv>
#include <optional>
#include <string>
#include <system_error>
#include <vector>

#include "CLI11.hpp"
#include "owenshap/core.h"
#include "owenshap/errors.h"
#include "owenshap/exact.h"
#include "owenshap/experiments.h"
#include "owenshap/models.h"
#include "owenshap/report_io.h"
#include "owenshap/samplers.h"

namespace owenshap {
namespace {

struct CliConfig {
  std::string model_path;
  std::string data_path;
  std::string game_spec;
  std::size_t row = 0;
  std::string algo = "halved-owen";
  std::optional<std::uint64_t> samples;
  std::optional<std::uint64_t> q;
  std::optional<std::uint64_t> m;
  std::optional<std::uint64_t> mc;
  std::uint64_t seed = 0;
  std::string baseline = "zero";
  std::string class_selector = "predicted";
  std::string out_path;
  std::optional<std::size_t> width;
  std::optional<std::size_t> height;
  bool compat_normalization = false;
  bool exclude_bias = false;
  bool castro_fixed_bias = false;
  // experiments
  std::size_t examples = 50;
  std::string budgets = "2000";
  std::string steps = "2:200:2";
  std::string algos = "castro,owen,halved-owen";
  std::uint64_t repeats = 1;
  std::size_t exact_cap = ExactConfig{}.max_features;
  // synth
  std::size_t features = 15;
  std::size_t rows = 100;
  std::string model_out;
  std::string data_out;
};

constexpr std::uint64_t kDefaultSamples = 2000;
constexpr std::uint64_t kDefaultInnerSamples = 2;

std::uint64_t ParseCount(std::string_view text, std::string_view what) {
  std::uint64_t v = 0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (text.empty() || ec != std::errc() || ptr != end) {
    throw ConfigError("cannot parse '" + std::string(text) + "' in " +
                      std::string(what));
  }
  return v;
}

std::vector<std::string_view> Split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t at = text.find(sep, start);
    parts.push_back(text.substr(start, at - start));
    if (at == std::string_view::npos) break;
    start = at + 1;
  }
  return parts;
}

std::vector<std::uint64_t> ParseCountList(std::string_view text,
                                          std::string_view what) {
  std::vector<std::uint64_t> out;
  for (const auto part : Split(text, ',')) out.push_back(ParseCount(part, what));
  return out;
}

// "first:last:stride" or a comma-separated list.
std::vector<std::uint64_t> ParseSteps(std::string_view text) {
  if (text.find(':') == std::string_view::npos) {
    return ParseCountList(text, "--steps");
  }
  const auto parts = Split(text, ':');
  if (parts.size() != 3) {
    throw ConfigError("--steps expects first:last:stride, got '" +
                      std::string(text) + "'");
  }
  return step_range(ParseCount(parts[0], "--steps"),
                    ParseCount(parts[1], "--steps"),
                    ParseCount(parts[2], "--steps"));
}

std::vector<Algorithm> ParseAlgorithms(std::string_view text) {
  std::vector<Algorithm> out;
  for (const auto part : Split(text, ',')) out.push_back(parse_algorithm(part));
  return out;
}

SamplingBudget ResolveBudget(const CliConfig& cfg) {
  const Algorithm algo = parse_algorithm(cfg.algo);
  switch (algo) {
    case Algorithm::kExact:
      if (cfg.samples || cfg.q || cfg.m || cfg.mc) {
        throw ConfigError("the exact algorithm takes no sampling budget");
      }
      return SamplingBudget::Exact();
    case Algorithm::kCastro:
      if (cfg.q || cfg.m) throw ConfigError("--q/--m apply to Owen sampling");
      if (cfg.mc) return SamplingBudget::Castro(*cfg.mc);
      return budget_to_params(algo, cfg.samples.value_or(kDefaultSamples));
    case Algorithm::kOwen:
    case Algorithm::kHalvedOwen:
      if (cfg.mc) throw ConfigError("--mc applies to castro sampling");
      if (cfg.q || cfg.m) {
        if (!cfg.q) throw ConfigError("--m requires --q");
        const std::uint64_t m = cfg.m.value_or(kDefaultInnerSamples);
        return algo == Algorithm::kOwen ? SamplingBudget::Owen(*cfg.q, m)
                                        : SamplingBudget::HalvedOwen(*cfg.q, m);
      }
      return budget_to_params(algo, cfg.samples.value_or(kDefaultSamples),
                              kDefaultInnerSamples);
  }
  throw ConfigError("unhandled algorithm");
}

SamplerOptions SamplerFlags(const CliConfig& cfg) {
  SamplerOptions opts;
  opts.compat_normalization = cfg.compat_normalization;
  opts.castro_include_bias = !cfg.castro_fixed_bias;
  return opts;
}

std::optional<BaselineVector> ResolveBaseline(const CliConfig& cfg) {
  if (cfg.baseline == "zero") return std::nullopt;
  const DatasetTable table = load_dataset_file(cfg.baseline);
  if (table.rows.empty()) {
    throw ParseError("baseline file '" + cfg.baseline + "' has no rows");
  }
  const auto v = table.rows.front().values();
  return BaselineVector(std::vector<double>(v.begin(), v.end()));
}

std::optional<std::size_t> ResolveClass(const CliConfig& cfg) {
  if (cfg.class_selector == "predicted") return std::nullopt;
  return static_cast<std::size_t>(ParseCount(cfg.class_selector, "--class"));
}

void Emit(const CliConfig& cfg, const std::string& content, std::ostream& out) {
  if (cfg.out_path.empty()) {
    out << content;
  } else {
    write_text_file(cfg.out_path, content);
  }
}

void PrintDiagnostics(const SamplingBudget& budget, const ShapleyVector& sv,
                      std::ostream& err) {
  err << "algorithm=" << algorithm_name(budget.kind);
  switch (budget.kind) {
    case Algorithm::kExact:
      break;
    case Algorithm::kCastro:
      err << " Mc=" << budget.castro_permutations;
      break;
    case Algorithm::kOwen:
    case Algorithm::kHalvedOwen:
      err << " Q=" << budget.grid_resolution << " M=" << budget.inner_samples;
      break;
  }
  if (budget.requested_equivalent != 0) {
    err << " equivalent_samples=" << budget.realized_equivalent;
    if (budget.realized_equivalent != budget.requested_equivalent) {
      err << " (requested " << budget.requested_equivalent << ")";
    }
  }
  if (budget.kind != Algorithm::kExact) err << " seed=" << sv.seed;
  err << " model_evaluations=" << sv.diagnostics.model_evaluations
      << " marginal_samples_per_feature="
      << sv.diagnostics.marginal_samples_per_feature;
  if (sv.diagnostics.grid_points_visited != 0) {
    err << " grid_points=" << sv.diagnostics.grid_points_visited;
  }
  err << "\n";
}

ShapleyVector Estimate(const Game& game, const SamplingBudget& budget,
                       const CliConfig& cfg) {
  if (budget.kind == Algorithm::kExact) {
    ExactConfig exact;
    exact.max_features = cfg.exact_cap;
    return exact_shapley(game, exact);
  }
  return estimate_shapley(game, budget, RngSeed{cfg.seed}, SamplerFlags(cfg));
}

void RequireDataInputs(const CliConfig& cfg) {
  if (cfg.model_path.empty() || cfg.data_path.empty()) {
    throw ConfigError("--model and --data are required");
  }
}

void CmdAttribute(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  const SamplingBudget budget = ResolveBudget(cfg);
  std::vector<std::string> names;
  std::optional<Game> game;
  if (!cfg.game_spec.empty()) {
    if (!cfg.model_path.empty() || !cfg.data_path.empty()) {
      throw ConfigError("--game cannot be combined with --model/--data");
    }
    game.emplace(synthetic_game(parse_game_spec(cfg.game_spec)));
  } else {
    RequireDataInputs(cfg);
    const MlpModel model = load_model_file(cfg.model_path);
    const DatasetTable data = load_dataset_file(cfg.data_path);
    if (cfg.row >= data.size()) {
      throw IndexError("row " + std::to_string(cfg.row) + " out of range for " +
                       std::to_string(data.size()) + " rows");
    }
    const FeatureVector& x = data.rows[cfg.row];
    const BaselineVector baseline =
        ResolveBaseline(cfg).value_or(BaselineVector::Zeros(x.size()));
    const std::size_t cls =
        ResolveClass(cfg).value_or(predicted_class(model, x.values()));
    game.emplace(make_game(model, x, baseline, cls));
    names = data.feature_names;
  }
  const ShapleyVector sv = Estimate(*game, budget, cfg);
  PrintDiagnostics(budget, sv, err);
  Emit(cfg, attribution_csv(sv.attributions, names, !cfg.exclude_bias), out);
}

MseExperimentConfig MseFlags(const CliConfig& cfg) {
  MseExperimentConfig mc;
  mc.example_count = cfg.examples;
  mc.budget_grid = ParseCountList(cfg.budgets, "--budgets");
  mc.selection_seed = RngSeed{cfg.seed};
  mc.seeds.clear();
  for (std::uint64_t r = 0; r < cfg.repeats; ++r) {
    mc.seeds.push_back(RngSeed{cfg.seed + r});
  }
  mc.algorithms = ParseAlgorithms(cfg.algos);
  mc.m_default = cfg.m.value_or(kDefaultInnerSamples);
  mc.baseline = ResolveBaseline(cfg);
  mc.exact.max_features = cfg.exact_cap;
  mc.sampler = SamplerFlags(cfg);
  return mc;
}

void CmdExperimentMse(const CliConfig& cfg, std::ostream& out,
                      std::ostream& err) {
  RequireDataInputs(cfg);
  if (cfg.repeats < 1) throw ConfigError("--repeats must be at least 1");
  const MlpModel model = load_model_file(cfg.model_path);
  const DatasetTable data = load_dataset_file(cfg.data_path);
  const MseReport report = run_mse_experiment(model, data, MseFlags(cfg));
  for (const MseMean& m : report.means()) {
    err << algorithm_name(m.algorithm) << " equivalent_samples="
        << m.equivalent_samples << " mean_mse=" << format_real(m.mean_mse)
        << "\n";
  }
  Emit(cfg, mse_csv(report), out);
}

void CmdExperimentVariance(const CliConfig& cfg, std::ostream& out,
                           std::ostream& err) {
  RequireDataInputs(cfg);
  const MlpModel model = load_model_file(cfg.model_path);
  const DatasetTable data = load_dataset_file(cfg.data_path);
  VarianceExperimentConfig vc;
  vc.example_count = cfg.examples;
  vc.step_grid = ParseSteps(cfg.steps);
  vc.seed = RngSeed{cfg.seed};
  vc.algorithms = ParseAlgorithms(cfg.algos);
  vc.m_default = cfg.m.value_or(kDefaultInnerSamples);
  vc.baseline = ResolveBaseline(cfg);
  vc.sampler = SamplerFlags(cfg);
  const VarianceReport report = run_variance_experiment(model, data, vc);
  err << "variance analysis over " << report.examples.size() << " examples, "
      << vc.step_grid.size() << " steps\n";
  Emit(cfg, variance_csv(report), out);
}

void CmdSaliency(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  RequireDataInputs(cfg);
  if (cfg.width.has_value() != cfg.height.has_value()) {
    throw ConfigError("--width and --height must be given together");
  }
  const bool image = cfg.width.has_value();
  if (image && cfg.out_path.empty()) {
    throw ConfigError("image export needs --out PREFIX");
  }
  const SamplingBudget budget = ResolveBudget(cfg);
  const MlpModel model = load_model_file(cfg.model_path);
  const DatasetTable data = load_dataset_file(cfg.data_path);

  SaliencyOptions opts;
  opts.baseline = ResolveBaseline(cfg);
  opts.class_index = ResolveClass(cfg);
  opts.sampler = SamplerFlags(cfg);
  opts.exact.max_features = cfg.exact_cap;
  const SaliencyMap map =
      run_saliency(model, data, cfg.row, budget, RngSeed{cfg.seed}, opts);

  std::span<const double> pixels = map.values;
  if (cfg.exclude_bias) pixels = pixels.subspan(1);
  std::string ppm;
  if (image) ppm = render_ppm(pixels, *cfg.width, *cfg.height);

  ShapleyVector sv;
  sv.seed = cfg.seed;
  sv.diagnostics = map.diagnostics;
  PrintDiagnostics(budget, sv, err);
  err << "predicted_class=" << map.predicted_class
      << " explained_class=" << map.explained_class << "\n";

  const std::string csv =
      attribution_csv(map.values, data.feature_names, !cfg.exclude_bias);
  if (cfg.out_path.empty()) {
    out << csv;
    return;
  }
  write_text_file(cfg.out_path + ".csv", csv);
  if (image) write_text_file(cfg.out_path + ".ppm", ppm);
}

void CmdSynth(const CliConfig& cfg, std::ostream& err) {
  if (cfg.model_out.empty() || cfg.data_out.empty()) {
    throw ConfigError("--model-out and --data-out are required");
  }
  const BenchmarkProblem problem =
      make_benchmark(cfg.features, cfg.rows, RngSeed{cfg.seed});
  write_text_file(cfg.model_out, save_model(problem.model));
  write_text_file(cfg.data_out, save_dataset(problem.data));
  err << "wrote " << cfg.features << "-feature model and " << cfg.rows
      << " rows\n";
}

void AddInputFlags(CLI::App* cmd, CliConfig& cfg) {
  cmd->add_option("--model", cfg.model_path, "Model file (JSON)");
  cmd->add_option("--data", cfg.data_path, "Dataset file (CSV)");
  cmd->add_option("--baseline", cfg.baseline,
                  "Baseline: 'zero' or a CSV file whose first row is used");
  cmd->add_option("--seed", cfg.seed, "Master seed");
  cmd->add_option("--out", cfg.out_path, "Output path");
  cmd->add_flag("--compat-normalization", cfg.compat_normalization,
                "Divide Owen sums by Q*M instead of the sample count");
  cmd->add_flag("--castro-fixed-bias", cfg.castro_fixed_bias,
                "Keep the bias slot out of Castro permutations");
  cmd->add_option("--exact-cap", cfg.exact_cap,
                  "Largest feature count for exact enumeration");
}

void AddBudgetFlags(CLI::App* cmd, CliConfig& cfg) {
  cmd->add_option("--algo", cfg.algo, "exact, castro, owen or halved-owen");
  auto* samples = cmd->add_option("--samples", cfg.samples,
                                  "Budget in equivalent samples");
  cmd->add_option("--q", cfg.q, "Owen grid resolution Q")->excludes(samples);
  cmd->add_option("--m", cfg.m, "Owen inner samples M")->excludes(samples);
  cmd->add_option("--mc", cfg.mc, "Castro permutations M_c")->excludes(samples);
  cmd->add_option("--row", cfg.row, "Dataset row to explain");
  cmd->add_option("--class", cfg.class_selector,
                  "Output class index or 'predicted'");
  cmd->add_flag("--exclude-bias", cfg.exclude_bias,
                "Drop feature 0 from the output");
}

}  // namespace

int run_cli(std::span<const std::string> args, std::ostream& out,
            std::ostream& err) {
  CliConfig cfg;
  CLI::App app{"Exact and sampled Shapley values for MLP classifiers"};
  app.require_subcommand(1);

  auto* attribute = app.add_subcommand("attribute", "Attribute one input");
  AddInputFlags(attribute, cfg);
  AddBudgetFlags(attribute, cfg);
  attribute->add_option("--game", cfg.game_spec,
                        "Synthetic game instead of a model, e.g. "
                        "unanimity:2:0,1");

  auto* experiment = app.add_subcommand("experiment", "Run a study");
  experiment->require_subcommand(1);
  auto* mse = experiment->add_subcommand("mse", "MSE against exact values");
  auto* variance =
      experiment->add_subcommand("variance", "Running standard deviations");
  for (auto* cmd : {mse, variance}) {
    AddInputFlags(cmd, cfg);
    cmd->add_option("--examples", cfg.examples, "Examples to sample");
    cmd->add_option("--algos", cfg.algos, "Comma-separated algorithms");
    cmd->add_option("--m", cfg.m, "Owen inner samples M");
  }
  mse->add_option("--budgets", cfg.budgets, "Comma-separated budgets");
  mse->add_option("--repeats", cfg.repeats, "Seeds per example");
  variance->add_option("--steps", cfg.steps, "first:last:stride or a list");

  auto* saliency = app.add_subcommand("saliency", "Saliency map of one row");
  AddInputFlags(saliency, cfg);
  AddBudgetFlags(saliency, cfg);
  saliency->add_option("--width", cfg.width, "Image width");
  saliency->add_option("--height", cfg.height, "Image height");

  auto* synth = app.add_subcommand("synth", "Write a seeded benchmark problem");
  synth->add_option("--features", cfg.features, "Inputs including the bias slot");
  synth->add_option("--rows", cfg.rows, "Dataset rows");
  synth->add_option("--seed", cfg.seed, "Seed");
  synth->add_option("--model-out", cfg.model_out, "Model path");
  synth->add_option("--data-out", cfg.data_out, "Dataset path");

  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (*attribute) {
      CmdAttribute(cfg, out, err);
    } else if (*mse) {
      CmdExperimentMse(cfg, out, err);
    } else if (*variance) {
      CmdExperimentVariance(cfg, out, err);
    } else if (*saliency) {
      CmdSaliency(cfg, out, err);
    } else if (*synth) {
      CmdSynth(cfg, err);
    }
  } catch (const BudgetError& e) {
    err << "error: " << e.what() << "\n";
    return kExitBudget;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitOk;
}

}  // namespace owenshap
