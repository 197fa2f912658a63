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

#ifndef TREEGLASS_RULES_HPP
#define TREEGLASS_RULES_HPP

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "treeglass/core.hpp"
#include "treeglass/gbdt.hpp"

namespace treeglass {

enum class RuleOp { lt, ge };

struct RuleCondition {
  std::string feature;
  RuleOp op = RuleOp::lt;
  double threshold = 0.0;

  bool operator==(const RuleCondition&) const = default;
};

/// One root-to-leaf path: the conjunction of its conditions holds for a row
/// iff routing that row through the tree reaches this leaf.
struct Rule {
  std::vector<RuleCondition> conditions;
  double leaf_value = 0.0;
  std::size_t tree_index = 0;

  bool operator==(const Rule&) const = default;
};

struct RuleSetStats {
  std::size_t rule_count = 0;
  std::size_t text_length = 0;      // Unicode scalar count
  std::size_t file_size_bytes = 0;  // on-disk UTF-8 size
};

namespace detail {

inline void collect_rules(const Tree& tree, std::size_t node,
                          const std::vector<std::string>& names, std::size_t tree_index,
                          std::vector<RuleCondition>& path, std::vector<Rule>& out) {
  const TreeNode& nd = tree.nodes[node];
  if (nd.is_leaf()) {
    out.push_back(Rule{path, nd.leaf_value, tree_index});
    return;
  }
  const std::string& name = names[static_cast<std::size_t>(nd.split_feature)];
  path.push_back({name, RuleOp::lt, nd.threshold});
  collect_rules(tree, static_cast<std::size_t>(nd.left), names, tree_index, path, out);
  path.back().op = RuleOp::ge;
  collect_rules(tree, static_cast<std::size_t>(nd.right), names, tree_index, path, out);
  path.pop_back();
}

}  // namespace detail

/// One rule per leaf per tree, leaves in depth-first order (left before
/// right), trees in ensemble order.
inline std::vector<Rule> extract_rules(const TreeEnsemble& m) {
  if (m.trees.empty()) throw DataError("extract_rules: empty ensemble");
  std::vector<Rule> rules;
  std::vector<RuleCondition> path;
  for (std::size_t t = 0; t < m.trees.size(); ++t) {
    detail::collect_rules(m.trees[t], 0, m.column_names, t, path, rules);
  }
  return rules;
}

/// One rule per line: `IF <cond> AND <cond> THEN score=<v> (tree <k>)`.
/// Thresholds and scores print as shortest round-trip decimals; an empty
/// conjunction prints as `IF true`.
inline std::string emit_rule_text(const std::vector<Rule>& rules) {
  std::string out;
  for (const Rule& rule : rules) {
    out += "IF ";
    if (rule.conditions.empty()) {
      out += "true";
    } else {
      for (std::size_t i = 0; i < rule.conditions.size(); ++i) {
        if (i > 0) out += " AND ";
        const RuleCondition& c = rule.conditions[i];
        out += c.feature;
        out += c.op == RuleOp::lt ? " < " : " >= ";
        out += format_double(c.threshold);
      }
    }
    out += " THEN score=";
    out += format_double(rule.leaf_value);
    out += " (tree ";
    out += std::to_string(rule.tree_index);
    out += ")\n";
  }
  return out;
}

/// Evaluates the rule set as a surrogate model. Fired leaf values accumulate
/// in rule order, which is tree order, so the floating-point additions match
/// predict_margin exactly.
inline double rules_margin(const std::vector<Rule>& rules, std::span<const double> x,
                           const std::vector<std::string>& column_names,
                           double base_margin) {
  std::map<std::string, std::size_t> index_of;
  for (std::size_t i = 0; i < column_names.size(); ++i) index_of[column_names[i]] = i;
  double margin = base_margin;
  for (const Rule& rule : rules) {
    bool fires = true;
    for (const RuleCondition& c : rule.conditions) {
      auto it = index_of.find(c.feature);
      if (it == index_of.end()) throw DataError("rules_margin: unknown feature " + c.feature);
      double v = x[it->second];
      if (c.op == RuleOp::lt ? !(v < c.threshold) : !(v >= c.threshold)) {
        fires = false;
        break;
      }
    }
    if (fires) margin += rule.leaf_value;
  }
  return margin;
}

inline void write_rule_text(const std::string& text, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write file: " + path);
  out << text;
  if (!out) throw IoError("write failed: " + path);
}

inline RuleSetStats rule_stats(const std::vector<Rule>& rules, const std::string& text,
                               const std::string& path) {
  std::error_code ec;
  auto size = std::filesystem::file_size(path, ec);
  if (ec) throw IoError("cannot stat file: " + path);
  RuleSetStats stats;
  stats.rule_count = rules.size();
  stats.text_length = utf8_length(text);
  stats.file_size_bytes = static_cast<std::size_t>(size);
  return stats;
}

/// Collapses per-feature conditions to at most one lower and one upper bound.
/// The simplified rule fires on exactly the same rows. A rule whose interval
/// is empty is rejected rather than silently dropped.
inline Rule simplify_rule(const Rule& r) {
  struct Bound {
    bool has_lt = false, has_ge = false;
    double lt = 0.0, ge = 0.0;
    std::size_t first_lt = 0, first_ge = 0;
  };
  std::map<std::string, Bound> bounds;
  std::vector<std::string> feature_order;
  for (std::size_t i = 0; i < r.conditions.size(); ++i) {
    const RuleCondition& c = r.conditions[i];
    auto [it, inserted] = bounds.try_emplace(c.feature);
    if (inserted) feature_order.push_back(c.feature);
    Bound& b = it->second;
    if (c.op == RuleOp::lt) {
      if (!b.has_lt || c.threshold < b.lt) b.lt = c.threshold;
      if (!b.has_lt) b.first_lt = i;
      b.has_lt = true;
    } else {
      if (!b.has_ge || c.threshold > b.ge) b.ge = c.threshold;
      if (!b.has_ge) b.first_ge = i;
      b.has_ge = true;
    }
  }
  std::vector<std::pair<std::size_t, RuleCondition>> kept;
  for (const auto& f : feature_order) {
    const Bound& b = bounds.at(f);
    if (b.has_lt && b.has_ge && b.ge >= b.lt) {
      throw DataError("simplify_rule: contradictory conditions on \"" + f +
                      "\" leave an empty interval");
    }
    if (b.has_ge) kept.push_back({b.first_ge, {f, RuleOp::ge, b.ge}});
    if (b.has_lt) kept.push_back({b.first_lt, {f, RuleOp::lt, b.lt}});
  }
  std::sort(kept.begin(), kept.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  Rule out;
  out.leaf_value = r.leaf_value;
  out.tree_index = r.tree_index;
  for (auto& [pos, cond] : kept) out.conditions.push_back(std::move(cond));
  return out;
}

}  // namespace treeglass

#endif  // TREEGLASS_RULES_HPP
