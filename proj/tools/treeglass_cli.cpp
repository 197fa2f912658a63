// Copyright 2026 The treeglass Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdio>
#include <exception>
#include <string>

#include "CLI11.hpp"
#include "treeglass/treeglass.hpp"

namespace {

constexpr int kExitConfigError = 2;
constexpr int kExitDataError = 3;
constexpr int kExitRuntimeError = 4;

void add_common_options(CLI::App& app, treeglass::RunConfig& cfg) {
  app.set_config("--config")->description("TOML config file; flags override its values");
  app.add_option("--data", cfg.data, "CSV dataset path");
  app.add_option("--label-col", cfg.label_col, "name of the label column");
  app.add_option("--positive-label", cfg.positive_label,
                 "label value mapped to class 1");
  app.add_option("--drop", cfg.drop, "columns to drop before encoding");
  app.add_option("--scheme", cfg.schemes,
                 "encoding scheme(s): label|one_hot|ordinal|binary")
      ->delimiter(',');
  app.add_flag("--treat-numeric-as-categorical,!--no-treat-numeric-as-categorical",
               cfg.treat_numeric_as_categorical,
               "expand numeric columns over their distinct values under "
               "one_hot/binary (default on)");
  app.add_option("--n-trees", cfg.n_trees, "boosting rounds");
  app.add_option("--max-depth", cfg.max_depth, "maximum tree depth");
  app.add_option("--learning-rate", cfg.learning_rate, "shrinkage per round");
  app.add_option("--lambda", cfg.lambda, "L2 regularization on leaf values");
  app.add_option("--gamma", cfg.gamma, "minimum gain to split");
  app.add_option("--min-child-weight", cfg.min_child_weight,
                 "minimum hessian sum per child");
  app.add_option("--base-score", cfg.base_score, "initial probability estimate");
  app.add_option("--test-fraction", cfg.test_fraction, "held-out fraction in (0,1)");
  app.add_option("--seed", cfg.seed, "split seed");
  app.add_option("--top-k", cfg.top_k, "features/steps to keep in reports");
  app.add_option("--conditioning", cfg.conditioning,
                 "SHAP conditioning: path|interventional");
  app.add_option("--out", cfg.out, "output root; runs go to <out>/run-<hash>/");
  app.add_option("--delimiter", cfg.delimiter, "CSV delimiter (single character)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"treeglass: encode, boost, and explain tabular classifiers"};
  app.require_subcommand(1);

  treeglass::RunConfig cfg;
  add_common_options(app, cfg);

  CLI::App* train = app.add_subcommand("train", "train a model and report metrics");
  train->fallthrough(true);

  CLI::App* explain =
      app.add_subcommand("explain", "attribute the test split and render plots");
  explain->fallthrough(true);
  explain->add_option("--instances", cfg.instances,
                      "test-row indices to render waterfalls for")
      ->delimiter(',');

  CLI::App* rules = app.add_subcommand("rules", "dump the model's IF-rules");
  rules->fallthrough(true);

  CLI::App* compare =
      app.add_subcommand("compare", "run several encodings over one shared split");
  compare->fallthrough(true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitConfigError;
  }

  try {
    if (train->parsed()) {
      treeglass::TrainResult result = treeglass::cmd_train(cfg);
      std::printf("%s\n", result.summary.c_str());
      std::printf("run directory: %s\n", result.dir.string().c_str());
    } else if (explain->parsed()) {
      treeglass::ExplainResult result = treeglass::cmd_explain(cfg);
      std::printf("attributed %zu test rows\n", result.attribution_rows);
      std::printf("run directory: %s\n", result.dir.string().c_str());
    } else if (rules->parsed()) {
      treeglass::RulesResult result = treeglass::cmd_rules(cfg);
      std::printf("rules: %zu, text length: %zu characters, file size: %zu bytes\n",
                  result.stats.rule_count, result.stats.text_length,
                  result.stats.file_size_bytes);
      std::printf("run directory: %s\n", result.dir.string().c_str());
    } else if (compare->parsed()) {
      treeglass::CompareResult result = treeglass::cmd_compare(cfg);
      for (const auto& outcome : result.outcomes) {
        std::printf("%-10s f1=%.3f accuracy=%.3f precision=%.3f recall=%.3f\n",
                    outcome.scheme.c_str(), outcome.metrics.f1,
                    outcome.metrics.accuracy, outcome.metrics.precision,
                    outcome.metrics.recall);
      }
      std::printf("run directory: %s\n", result.dir.string().c_str());
    }
  } catch (const treeglass::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfigError;
  } catch (const treeglass::DataError& e) {
    std::fprintf(stderr, "data error: %s\n", e.what());
    return kExitDataError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitRuntimeError;
  }
  return 0;
}
