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

#ifndef TREEGLASS_PIPELINE_HPP
#define TREEGLASS_PIPELINE_HPP

#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "treeglass/aggregate.hpp"
#include "treeglass/core.hpp"
#include "treeglass/encoders.hpp"
#include "treeglass/gbdt.hpp"
#include "treeglass/report.hpp"
#include "treeglass/rules.hpp"
#include "treeglass/shapley.hpp"
#include "treeglass/tabular.hpp"

namespace treeglass {

/// Everything a run needs. Serializes to a TOML file whose keys match the
/// CLI's long option names; flags override file values.
struct RunConfig {
  std::string data;
  std::string label_col;
  std::string positive_label;
  std::vector<std::string> drop;
  std::vector<std::string> schemes = {"label"};
  bool treat_numeric_as_categorical = true;
  int n_trees = 100;
  int max_depth = 5;
  double learning_rate = 0.1;
  double lambda = 1.0;
  double gamma = 0.0;
  double min_child_weight = 1.0;
  double base_score = 0.5;
  double test_fraction = 0.2;
  std::uint64_t seed = 42;
  std::size_t top_k = 10;
  std::string conditioning = "path";  // "path" | "interventional"
  std::string out = "runs";
  std::string delimiter = ",";
  std::vector<std::size_t> instances;  // explain: row indices into the test set

  TrainParams train_params() const {
    TrainParams p;
    p.n_trees = n_trees;
    p.max_depth = max_depth;
    p.learning_rate = learning_rate;
    p.lambda = lambda;
    p.gamma = gamma;
    p.min_child_weight = min_child_weight;
    p.base_score = base_score;
    return p;
  }
};

namespace detail {

inline std::string toml_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out += "\"";
  return out;
}

inline std::string toml_list(const std::vector<std::string>& items) {
  std::string out = "[";
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ", ";
    out += toml_quote(items[i]);
  }
  out += "]";
  return out;
}

}  // namespace detail

inline std::string canonical_toml(const RunConfig& cfg) {
  std::string s;
  s += "data = " + detail::toml_quote(cfg.data) + "\n";
  s += "label-col = " + detail::toml_quote(cfg.label_col) + "\n";
  s += "positive-label = " + detail::toml_quote(cfg.positive_label) + "\n";
  // empty list keys are omitted; the config reader treats a missing key as
  // the default
  if (!cfg.drop.empty()) s += "drop = " + detail::toml_list(cfg.drop) + "\n";
  if (!cfg.schemes.empty()) s += "scheme = " + detail::toml_list(cfg.schemes) + "\n";
  s += std::string("treat-numeric-as-categorical = ") +
       (cfg.treat_numeric_as_categorical ? "true" : "false") + "\n";
  s += "n-trees = " + std::to_string(cfg.n_trees) + "\n";
  s += "max-depth = " + std::to_string(cfg.max_depth) + "\n";
  s += "learning-rate = " + format_double(cfg.learning_rate) + "\n";
  s += "lambda = " + format_double(cfg.lambda) + "\n";
  s += "gamma = " + format_double(cfg.gamma) + "\n";
  s += "min-child-weight = " + format_double(cfg.min_child_weight) + "\n";
  s += "base-score = " + format_double(cfg.base_score) + "\n";
  s += "test-fraction = " + format_double(cfg.test_fraction) + "\n";
  s += "seed = " + std::to_string(cfg.seed) + "\n";
  s += "top-k = " + std::to_string(cfg.top_k) + "\n";
  s += "conditioning = " + detail::toml_quote(cfg.conditioning) + "\n";
  s += "delimiter = " + detail::toml_quote(cfg.delimiter) + "\n";
  return s;
}

/// Hash over the fields that determine the trained artifacts (data, drops,
/// schemes, train params, split). Report-only knobs (top_k, conditioning,
/// instances) and the output root are excluded, so explain/rules runs resolve
/// to the directory their training run created.
inline std::string config_hash(const RunConfig& cfg) {
  std::string s;
  s += "data=" + cfg.data + "\n";
  s += "label-col=" + cfg.label_col + "\n";
  s += "positive-label=" + cfg.positive_label + "\n";
  s += "drop=" + detail::toml_list(cfg.drop) + "\n";
  s += "scheme=" + detail::toml_list(cfg.schemes) + "\n";
  s += std::string("treat-numeric-as-categorical=") +
       (cfg.treat_numeric_as_categorical ? "true" : "false") + "\n";
  s += "n-trees=" + std::to_string(cfg.n_trees) + "\n";
  s += "max-depth=" + std::to_string(cfg.max_depth) + "\n";
  s += "learning-rate=" + format_double(cfg.learning_rate) + "\n";
  s += "lambda=" + format_double(cfg.lambda) + "\n";
  s += "gamma=" + format_double(cfg.gamma) + "\n";
  s += "min-child-weight=" + format_double(cfg.min_child_weight) + "\n";
  s += "base-score=" + format_double(cfg.base_score) + "\n";
  s += "test-fraction=" + format_double(cfg.test_fraction) + "\n";
  s += "seed=" + std::to_string(cfg.seed) + "\n";
  s += "delimiter=" + cfg.delimiter + "\n";
  return to_hex16(fnv1a64(s));
}

inline std::filesystem::path run_directory(const RunConfig& cfg) {
  return std::filesystem::path(cfg.out) / ("run-" + config_hash(cfg));
}

namespace detail {

inline char delimiter_char(const RunConfig& cfg) {
  if (cfg.delimiter.size() != 1) {
    throw ConfigError("delimiter must be a single character");
  }
  return cfg.delimiter[0];
}

inline Dataset load_input(const RunConfig& cfg) {
  if (cfg.data.empty()) throw ConfigError("no dataset path given (--data)");
  if (cfg.label_col.empty()) throw ConfigError("no label column given (--label-col)");
  CsvOptions options;
  options.delimiter = delimiter_char(cfg);
  options.positive_label = cfg.positive_label;
  Dataset ds = load_csv(cfg.data, cfg.label_col, options);
  for (const auto& name : cfg.drop) ds = drop_column(ds, name);
  return ds;
}

inline Encoder fit_cli_encoder(const RunConfig& cfg, const Dataset& ds,
                               const std::string& scheme_name) {
  EncodingScheme scheme;
  scheme.kind = scheme_from_name(scheme_name);
  scheme.treat_numeric_as_categorical = cfg.treat_numeric_as_categorical;
  if (scheme.kind == SchemeKind::ordinal) {
    // no order source in the CLI surface; fall back to lexicographic
    for (const auto& s : ds.schema) {
      if (s.kind == ColumnKind::categorical) {
        scheme.ordinal_orders[s.name] = s.distinct_values;
      }
    }
  }
  return Encoder::fit(ds, scheme);
}

inline ConditioningRef conditioning_for(const RunConfig& cfg, const Matrix& background) {
  if (cfg.conditioning == "path") return ConditioningRef::path_dependent();
  if (cfg.conditioning == "interventional") {
    return ConditioningRef::interventional(background);
  }
  throw ConfigError("conditioning must be \"path\" or \"interventional\"");
}

/// Deterministic background sample: an even stride over the training rows,
/// capped at 256.
inline Matrix background_sample(const Matrix& train) {
  const std::size_t cap = 256;
  if (train.rows() <= cap) return train;
  Matrix out(cap, train.cols());
  for (std::size_t i = 0; i < cap; ++i) {
    std::size_t src = i * train.rows() / cap;
    for (std::size_t c = 0; c < train.cols(); ++c) out.at(i, c) = train.at(src, c);
  }
  return out;
}

inline void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write file: " + path.string());
  out << text;
  if (!out) throw IoError("write failed: " + path.string());
}

inline void write_json_file(const std::filesystem::path& path, const nlohmann::json& j) {
  write_text_file(path, j.dump(2) + "\n");
}

inline nlohmann::json metrics_to_json(const MetricsReport& m) {
  nlohmann::json j;
  j["accuracy"] = m.accuracy;
  j["precision"] = m.precision;
  j["recall"] = m.recall;
  j["f1"] = m.f1;
  j["tp"] = m.tp;
  j["fp"] = m.fp;
  j["tn"] = m.tn;
  j["fn"] = m.fn;
  return j;
}

inline std::string metrics_summary(const MetricsReport& m) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), "f1=%.3f accuracy=%.3f precision=%.3f recall=%.3f",
                m.f1, m.accuracy, m.precision, m.recall);
  return std::string(buf);
}

inline std::string safe_filename(const std::string& name) {
  std::string out;
  for (char c : name) {
    bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
              (c >= '0' && c <= '9') || c == '_' || c == '-' || c == '.';
    out.push_back(ok ? c : '_');
  }
  return out;
}

struct PreparedRun {
  Dataset full;
  SplitIndices split;
  Dataset train_ds;
  Dataset test_ds;
};

inline PreparedRun prepare(const RunConfig& cfg) {
  PreparedRun run;
  run.full = load_input(cfg);
  run.split = stratified_split_indices(run.full, cfg.test_fraction, cfg.seed);
  run.train_ds = subset_rows(run.full, run.split.train);
  run.test_ds = subset_rows(run.full, run.split.test);
  return run;
}

}  // namespace detail

struct TrainResult {
  std::filesystem::path dir;
  MetricsReport metrics;
  std::string summary;
};

/// train: fit the first configured scheme on the training split, evaluate on
/// the held-out split, and persist model/encoder/metrics under the run
/// directory.
inline TrainResult cmd_train(const RunConfig& cfg) {
  if (cfg.schemes.empty()) throw ConfigError("no encoding scheme given (--scheme)");
  detail::PreparedRun run = detail::prepare(cfg);
  Encoder encoder = detail::fit_cli_encoder(cfg, run.full, cfg.schemes[0]);
  EncodedMatrix train_m = encoder.transform(run.train_ds);
  EncodedMatrix test_m = encoder.transform(run.test_ds);

  TreeEnsemble model = train(train_m, run.train_ds.labels, cfg.train_params());
  MetricsReport metrics = evaluate(model, test_m, run.test_ds.labels);

  std::filesystem::path dir = run_directory(cfg);
  std::filesystem::create_directories(dir);
  detail::write_text_file(dir / "config.toml", canonical_toml(cfg));
  save_encoder(encoder, (dir / "encoder.json").string());
  save_model(model, (dir / "model.json").string());
  nlohmann::json jm = detail::metrics_to_json(metrics);
  jm["scheme"] = cfg.schemes[0];
  jm["train_rows"] = run.train_ds.row_count;
  jm["test_rows"] = run.test_ds.row_count;
  detail::write_json_file(dir / "metrics.json", jm);

  return {dir, metrics, detail::metrics_summary(metrics)};
}

struct ExplainResult {
  std::filesystem::path dir;
  std::size_t attribution_rows = 0;
  std::vector<std::filesystem::path> waterfalls;
};

/// explain: attribute the test split with the persisted model, export the
/// attribution CSV, global and grouped importances, stacked plots for the
/// top grouped feature, and one waterfall per requested instance.
inline ExplainResult cmd_explain(const RunConfig& cfg) {
  std::filesystem::path dir = run_directory(cfg);
  if (!std::filesystem::exists(dir / "model.json") ||
      !std::filesystem::exists(dir / "encoder.json")) {
    throw DataError("model.json/encoder.json not found under " + dir.string() +
                    "; run the train command first");
  }
  detail::PreparedRun run = detail::prepare(cfg);
  Encoder encoder = load_encoder((dir / "encoder.json").string());
  TreeEnsemble model = load_model((dir / "model.json").string());
  EncodedMatrix test_m = encoder.transform(run.test_ds);

  Matrix background;
  if (cfg.conditioning != "path") {
    background = detail::background_sample(encoder.transform(run.train_ds).values);
  }
  ConditioningRef ref = detail::conditioning_for(cfg, background);

  std::vector<Attribution> atts = batch_shapley(model, test_m.values, ref);
  for (std::size_t i = 0; i < atts.size(); ++i) {
    if (!check_additivity(atts[i])) {
      throw Error("attribution additivity violated on test row " + std::to_string(i));
    }
  }
  write_attributions_csv(atts, test_m.column_names, (dir / "attributions.csv").string());

  std::filesystem::path plots = dir / "plots";
  std::filesystem::create_directories(plots);

  GlobalImportance gi = global_importance(atts, test_m.column_names);
  write_importance_csv(gi, (dir / "importance_global.csv").string());
  PlotData global_pd = build_global_plot(gi, cfg.top_k);
  render_svg(global_pd, (plots / "global_bar.svg").string());
  write_plot_json(global_pd, (plots / "global_bar.json").string());

  std::vector<GroupedImportance> grouped = group_by_feature(gi, test_m.provenance);
  write_grouped_csv(grouped, (dir / "importance_grouped.csv").string());
  if (!grouped.empty()) {
    const GroupedImportance& top = grouped.front();
    std::string stem = detail::safe_filename(top.feature);
    PlotData h = build_stacked_plot(top, Orientation::horizontal);
    render_svg(h, (plots / ("stacked_h_" + stem + ".svg")).string());
    write_plot_json(h, (plots / ("stacked_h_" + stem + ".json")).string());
    PlotData v = build_stacked_plot(top, Orientation::vertical);
    render_svg(v, (plots / ("stacked_v_" + stem + ".svg")).string());
    write_plot_json(v, (plots / ("stacked_v_" + stem + ".json")).string());
  }

  ExplainResult result;
  result.dir = dir;
  result.attribution_rows = atts.size();
  for (std::size_t idx : cfg.instances) {
    if (idx >= atts.size()) {
      throw ConfigError("instance index " + std::to_string(idx) +
                        " out of range; test set has " + std::to_string(atts.size()) +
                        " rows");
    }
    auto breakdown = local_breakdown(atts[idx], test_m.column_names,
                                     test_m.values.row(idx), test_m.provenance);
    PlotData wf = build_waterfall(breakdown, atts[idx].base_value, atts[idx].output,
                                  std::max<std::size_t>(cfg.top_k, 1));
    std::string stem = "waterfall_" + std::to_string(idx);
    render_svg(wf, (plots / (stem + ".svg")).string());
    write_plot_json(wf, (plots / (stem + ".json")).string());
    result.waterfalls.push_back(plots / (stem + ".svg"));
  }
  return result;
}

struct RulesResult {
  std::filesystem::path dir;
  RuleSetStats stats;
};

/// rules: dump the persisted model's IF-rules and their size statistics.
inline RulesResult cmd_rules(const RunConfig& cfg) {
  std::filesystem::path dir = run_directory(cfg);
  if (!std::filesystem::exists(dir / "model.json")) {
    throw DataError("model.json not found under " + dir.string() +
                    "; run the train command first");
  }
  TreeEnsemble model = load_model((dir / "model.json").string());
  std::vector<Rule> rules = extract_rules(model);
  std::string text = emit_rule_text(rules);
  std::filesystem::create_directories(dir);
  write_rule_text(text, (dir / "rules.txt").string());
  RuleSetStats stats = rule_stats(rules, text, (dir / "rules.txt").string());
  nlohmann::json j;
  j["rule_count"] = stats.rule_count;
  j["text_length"] = stats.text_length;
  j["file_size_bytes"] = stats.file_size_bytes;
  detail::write_json_file(dir / "rule_stats.json", j);
  return {dir, stats};
}

struct SchemeOutcome {
  std::string scheme;
  MetricsReport metrics;
  std::vector<std::pair<std::string, double>> top_features;  // gain importance
  double cumulative_top_k = 0.0;
  RuleSetStats rule_stats;
  // Flattened grouped per-value SHAP importances, descending.
  std::vector<std::tuple<std::string, std::string, double>> top_values;
};

struct CompareResult {
  std::filesystem::path dir;
  std::vector<SchemeOutcome> outcomes;
  std::map<std::string, double> f1_abs_difference;  // "a|b" -> |F1(a)-F1(b)|
};

/// compare: run every configured scheme over one shared split and emit a
/// side-by-side report of metrics, top-k gain importance with cumulative
/// share, rule statistics, and grouped per-value SHAP importances.
inline CompareResult cmd_compare(const RunConfig& cfg) {
  if (cfg.schemes.size() < 2) {
    throw ConfigError("compare needs at least two --scheme values");
  }
  detail::PreparedRun run = detail::prepare(cfg);
  std::filesystem::path dir = run_directory(cfg);
  std::filesystem::create_directories(dir);
  detail::write_text_file(dir / "config.toml", canonical_toml(cfg));

  CompareResult result;
  result.dir = dir;

  for (const std::string& scheme_name : cfg.schemes) {
    // Same split for every scheme; recomputed and checked rather than assumed.
    SplitIndices again = stratified_split_indices(run.full, cfg.test_fraction, cfg.seed);
    if (again.train != run.split.train || again.test != run.split.test) {
      throw Error("internal: split changed between schemes");
    }

    Encoder encoder = detail::fit_cli_encoder(cfg, run.full, scheme_name);
    EncodedMatrix train_m = encoder.transform(run.train_ds);
    EncodedMatrix test_m = encoder.transform(run.test_ds);
    TreeEnsemble model = train(train_m, run.train_ds.labels, cfg.train_params());

    SchemeOutcome outcome;
    outcome.scheme = scheme_name;
    outcome.metrics = evaluate(model, test_m, run.test_ds.labels);

    std::map<std::string, double> importance = gain_importance(model);
    if (!importance.empty()) {
      auto [top_names, cumulative] = select_top_features(importance, cfg.top_k);
      for (const auto& name : top_names) {
        outcome.top_features.emplace_back(name, importance.at(name));
      }
      outcome.cumulative_top_k = cumulative;
    }

    std::filesystem::path sdir = dir / detail::safe_filename(scheme_name);
    std::filesystem::create_directories(sdir);
    save_encoder(encoder, (sdir / "encoder.json").string());
    save_model(model, (sdir / "model.json").string());
    detail::write_json_file(sdir / "metrics.json", detail::metrics_to_json(outcome.metrics));

    std::vector<Rule> rules = extract_rules(model);
    std::string text = emit_rule_text(rules);
    write_rule_text(text, (sdir / "rules.txt").string());
    outcome.rule_stats = rule_stats(rules, text, (sdir / "rules.txt").string());

    Matrix background = detail::background_sample(train_m.values);
    ConditioningRef ref = detail::conditioning_for(cfg, background);
    std::vector<Attribution> atts = batch_shapley(model, test_m.values, ref);
    GlobalImportance gi = global_importance(atts, test_m.column_names);
    write_importance_csv(gi, (sdir / "importance_global.csv").string());
    std::vector<GroupedImportance> grouped = group_by_feature(gi, test_m.provenance);
    write_grouped_csv(grouped, (sdir / "importance_grouped.csv").string());

    std::vector<std::tuple<std::string, std::string, double>> values;
    for (const auto& g : grouped) {
      for (const auto& [value, score] : g.per_value) {
        values.emplace_back(g.feature, value, score);
      }
    }
    std::sort(values.begin(), values.end(), [](const auto& a, const auto& b) {
      if (std::get<2>(a) != std::get<2>(b)) return std::get<2>(a) > std::get<2>(b);
      if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) < std::get<0>(b);
      return std::get<1>(a) < std::get<1>(b);
    });
    if (values.size() > 20) values.resize(20);
    outcome.top_values = std::move(values);

    result.outcomes.push_back(std::move(outcome));
  }

  for (std::size_t a = 0; a < result.outcomes.size(); ++a) {
    for (std::size_t b = a + 1; b < result.outcomes.size(); ++b) {
      result.f1_abs_difference[result.outcomes[a].scheme + "|" +
                               result.outcomes[b].scheme] =
          std::fabs(result.outcomes[a].metrics.f1 - result.outcomes[b].metrics.f1);
    }
  }

  // JSON report
  nlohmann::json j;
  j["test_rows"] = run.test_ds.row_count;
  j["train_rows"] = run.train_ds.row_count;
  j["schemes"] = nlohmann::json::array();
  for (const auto& o : result.outcomes) {
    nlohmann::json js;
    js["scheme"] = o.scheme;
    js["metrics"] = detail::metrics_to_json(o.metrics);
    js["top_features"] = nlohmann::json::array();
    for (const auto& [name, score] : o.top_features) {
      js["top_features"].push_back({{"name", name}, {"importance", score}});
    }
    js["cumulative_top_k"] = o.cumulative_top_k;
    js["rule_stats"] = {{"rule_count", o.rule_stats.rule_count},
                        {"text_length", o.rule_stats.text_length},
                        {"file_size_bytes", o.rule_stats.file_size_bytes}};
    js["top_values"] = nlohmann::json::array();
    for (const auto& [feature, value, score] : o.top_values) {
      js["top_values"].push_back(
          {{"feature", feature}, {"value", value}, {"score", score}});
    }
    j["schemes"].push_back(js);
  }
  j["f1_abs_difference"] = result.f1_abs_difference;
  detail::write_json_file(dir / "comparison.json", j);

  // Markdown report
  std::string md;
  md += "# Encoding comparison\n\n";
  md += "Shared split: " + std::to_string(run.train_ds.row_count) + " train / " +
        std::to_string(run.test_ds.row_count) + " test rows, seed " +
        std::to_string(cfg.seed) + ".\n\n";
  md += "## Metrics\n\n";
  md += "| Encoding | F1 | Accuracy | Precision | Recall |\n";
  md += "|---|---|---|---|---|\n";
  char buf[256];
  for (const auto& o : result.outcomes) {
    std::snprintf(buf, sizeof(buf), "| %s | %.3f | %.3f | %.3f | %.3f |\n",
                  o.scheme.c_str(), o.metrics.f1, o.metrics.accuracy,
                  o.metrics.precision, o.metrics.recall);
    md += buf;
  }
  md += "\n## Top-" + std::to_string(cfg.top_k) + " features by gain\n\n";
  for (const auto& o : result.outcomes) {
    md += "### " + o.scheme + "\n\n";
    md += "| Rank | Feature | Importance |\n|---|---|---|\n";
    for (std::size_t i = 0; i < o.top_features.size(); ++i) {
      std::snprintf(buf, sizeof(buf), "| %zu | %s | %.4f |\n", i + 1,
                    o.top_features[i].first.c_str(), o.top_features[i].second);
      md += buf;
    }
    std::snprintf(buf, sizeof(buf), "\nCumulative top-%zu share: %.4f\n\n", cfg.top_k,
                  o.cumulative_top_k);
    md += buf;
  }
  md += "## Rules\n\n";
  md += "| Encoding | F1 | Rules file size | Rules text length |\n|---|---|---|---|\n";
  for (const auto& o : result.outcomes) {
    std::snprintf(buf, sizeof(buf), "| %s | %.3f | %zu KB | %zu characters |\n",
                  o.scheme.c_str(), o.metrics.f1,
                  o.rule_stats.file_size_bytes / 1024, o.rule_stats.text_length);
    md += buf;
  }
  md += "\n## Top per-value importances (mean |SHAP|)\n\n";
  for (const auto& o : result.outcomes) {
    md += "### " + o.scheme + "\n\n";
    md += "| Feature | Value | Score |\n|---|---|---|\n";
    for (const auto& [feature, value, score] : o.top_values) {
      std::snprintf(buf, sizeof(buf), "| %s | %s | %.5f |\n", feature.c_str(),
                    value.c_str(), score);
      md += buf;
    }
    md += "\n";
  }
  md += "## F1 differences\n\n";
  for (std::size_t a = 0; a < result.outcomes.size(); ++a) {
    for (std::size_t b = a + 1; b < result.outcomes.size(); ++b) {
      std::snprintf(buf, sizeof(buf), "- |F1(%s) - F1(%s)| = %.4f\n",
                    result.outcomes[a].scheme.c_str(),
                    result.outcomes[b].scheme.c_str(),
                    std::fabs(result.outcomes[a].metrics.f1 -
                              result.outcomes[b].metrics.f1));
      md += buf;
    }
  }
  detail::write_text_file(dir / "comparison.md", md);
  return result;
}

}  // namespace treeglass

#endif  // TREEGLASS_PIPELINE_HPP
