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

#ifndef TREEGLASS_SHAPLEY_HPP
#define TREEGLASS_SHAPLEY_HPP

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include "treeglass/core.hpp"
#include "treeglass/gbdt.hpp"
#include "treeglass/tabular.hpp"

namespace treeglass {

enum class Conditioning { path_dependent, interventional };

/// How the value function treats features outside the coalition:
/// path_dependent averages subtrees by cover, interventional substitutes
/// values from a background row set.
struct ConditioningRef {
  Conditioning mode = Conditioning::path_dependent;
  const Matrix* background = nullptr;  // interventional only

  static ConditioningRef path_dependent() { return {}; }
  static ConditioningRef interventional(const Matrix& bg) {
    return {Conditioning::interventional, &bg};
  }
};

/// Per-instance attribution in margin space. base_value is the empty-coalition
/// value; additivity base_value + sum(phi) = output holds for every producer
/// in this module.
struct Attribution {
  std::vector<double> phi;
  double base_value = 0.0;
  double output = 0.0;
};

inline bool check_additivity(const Attribution& att, double tol = 1e-9) {
  double sum = att.base_value;
  for (double p : att.phi) sum += p;
  return std::fabs(sum - att.output) <= tol;
}

namespace detail {

inline void validate_ref(const ConditioningRef& ref, std::size_t feature_count) {
  if (ref.mode == Conditioning::interventional) {
    if (ref.background == nullptr || ref.background->rows() == 0) {
      throw ConfigError("interventional conditioning requires a nonempty background set");
    }
    if (ref.background->cols() != feature_count) {
      throw DataError("background row width " + std::to_string(ref.background->cols()) +
                      " != feature count " + std::to_string(feature_count));
    }
  }
}

// Value of one tree when features outside the coalition are averaged by
// cover. InSet is any callable feature_index -> bool.
template <typename InSet>
double subtree_value(const Tree& tree, std::size_t node, std::span<const double> x,
                     const InSet& in_coalition) {
  const TreeNode& nd = tree.nodes[node];
  if (nd.is_leaf()) return nd.leaf_value;
  auto f = static_cast<std::size_t>(nd.split_feature);
  auto left = static_cast<std::size_t>(nd.left);
  auto right = static_cast<std::size_t>(nd.right);
  if (in_coalition(f)) {
    return subtree_value(tree, x[f] < nd.threshold ? left : right, x, in_coalition);
  }
  return (tree.nodes[left].cover * subtree_value(tree, left, x, in_coalition) +
          tree.nodes[right].cover * subtree_value(tree, right, x, in_coalition)) /
         nd.cover;
}

template <typename InSet>
double coalition_value_impl(const TreeEnsemble& m, std::span<const double> x,
                            const InSet& in_coalition, const ConditioningRef& ref) {
  if (ref.mode == Conditioning::path_dependent) {
    double total = m.base_margin();
    for (const Tree& tree : m.trees) total += subtree_value(tree, 0, x, in_coalition);
    return total;
  }
  const Matrix& bg = *ref.background;
  std::vector<double> hybrid(m.feature_count);
  double total = 0.0;
  for (std::size_t b = 0; b < bg.rows(); ++b) {
    for (std::size_t f = 0; f < m.feature_count; ++f) {
      hybrid[f] = in_coalition(f) ? x[f] : bg.at(b, f);
    }
    total += predict_margin(m, hybrid);
  }
  return total / static_cast<double>(bg.rows());
}

inline int tree_max_depth(const Tree& tree, std::size_t node = 0) {
  const TreeNode& nd = tree.nodes[node];
  if (nd.is_leaf()) return 0;
  return 1 + std::max(tree_max_depth(tree, static_cast<std::size_t>(nd.left)),
                      tree_max_depth(tree, static_cast<std::size_t>(nd.right)));
}

inline double tree_expected_value(const Tree& tree, std::size_t node = 0) {
  const TreeNode& nd = tree.nodes[node];
  if (nd.is_leaf()) return nd.leaf_value;
  auto left = static_cast<std::size_t>(nd.left);
  auto right = static_cast<std::size_t>(nd.right);
  return (tree.nodes[left].cover * tree_expected_value(tree, left) +
          tree.nodes[right].cover * tree_expected_value(tree, right)) /
         nd.cover;
}

// ---------------------------------------------------------------------------
// Path-dependent polynomial algorithm. Maintains, along each root-to-leaf
// descent, the permutation weights of all coalition sizes over the unique
// features met so far ("pweight"), with each feature's pass-through fraction
// when present (one_fraction) and cover fraction when absent (zero_fraction).
// Repeated features on a path are unwound and re-extended with combined
// fractions, so the result is the exact Shapley value of the cover-weighted
// value function.
// ---------------------------------------------------------------------------

struct PathElement {
  int feature = -1;
  double zero_fraction = 0.0;
  double one_fraction = 0.0;
  double pweight = 0.0;
};

inline void extend_path(PathElement* path, unsigned depth, double zero_fraction,
                        double one_fraction, int feature) {
  path[depth] = {feature, zero_fraction, one_fraction, depth == 0 ? 1.0 : 0.0};
  for (int i = static_cast<int>(depth) - 1; i >= 0; --i) {
    path[i + 1].pweight += one_fraction * path[i].pweight *
                           static_cast<double>(i + 1) / static_cast<double>(depth + 1);
    path[i].pweight = zero_fraction * path[i].pweight *
                      static_cast<double>(depth - static_cast<unsigned>(i)) /
                      static_cast<double>(depth + 1);
  }
}

inline void unwind_path(PathElement* path, unsigned depth, unsigned index) {
  const double one_fraction = path[index].one_fraction;
  const double zero_fraction = path[index].zero_fraction;
  double next_one_portion = path[depth].pweight;
  for (int i = static_cast<int>(depth) - 1; i >= 0; --i) {
    if (one_fraction != 0.0) {
      const double tmp = path[i].pweight;
      path[i].pweight = next_one_portion * static_cast<double>(depth + 1) /
                        (static_cast<double>(i + 1) * one_fraction);
      next_one_portion = tmp - path[i].pweight * zero_fraction *
                                   static_cast<double>(depth - static_cast<unsigned>(i)) /
                                   static_cast<double>(depth + 1);
    } else {
      path[i].pweight = path[i].pweight * static_cast<double>(depth + 1) /
                        (zero_fraction * static_cast<double>(depth - static_cast<unsigned>(i)));
    }
  }
  for (unsigned i = index; i < depth; ++i) {
    path[i].feature = path[i + 1].feature;
    path[i].zero_fraction = path[i + 1].zero_fraction;
    path[i].one_fraction = path[i + 1].one_fraction;
  }
}

inline double unwound_path_sum(const PathElement* path, unsigned depth, unsigned index) {
  const double one_fraction = path[index].one_fraction;
  const double zero_fraction = path[index].zero_fraction;
  double next_one_portion = path[depth].pweight;
  double total = 0.0;
  for (int i = static_cast<int>(depth) - 1; i >= 0; --i) {
    if (one_fraction != 0.0) {
      const double tmp = next_one_portion * static_cast<double>(depth + 1) /
                         (static_cast<double>(i + 1) * one_fraction);
      total += tmp;
      next_one_portion = path[i].pweight -
                         tmp * zero_fraction *
                             (static_cast<double>(depth - static_cast<unsigned>(i)) /
                              static_cast<double>(depth + 1));
    } else if (zero_fraction != 0.0) {
      total += (path[i].pweight / zero_fraction) /
               (static_cast<double>(depth - static_cast<unsigned>(i)) /
                static_cast<double>(depth + 1));
    }
  }
  return total;
}

inline void tree_shap_recurse(const Tree& tree, std::span<const double> x, double* phi,
                              std::size_t node, unsigned unique_depth,
                              PathElement* parent_path, double parent_zero_fraction,
                              double parent_one_fraction, int parent_feature) {
  PathElement* path = parent_path + unique_depth + 1;
  std::copy(parent_path, parent_path + unique_depth + 1, path);
  extend_path(path, unique_depth, parent_zero_fraction, parent_one_fraction,
              parent_feature);

  const TreeNode& nd = tree.nodes[node];
  if (nd.is_leaf()) {
    for (unsigned i = 1; i <= unique_depth; ++i) {
      const double w = unwound_path_sum(path, unique_depth, i);
      const PathElement& el = path[i];
      phi[el.feature] += w * (el.one_fraction - el.zero_fraction) * nd.leaf_value;
    }
    return;
  }

  const auto split = static_cast<std::size_t>(nd.split_feature);
  const auto left = static_cast<std::size_t>(nd.left);
  const auto right = static_cast<std::size_t>(nd.right);
  const std::size_t hot = x[split] < nd.threshold ? left : right;
  const std::size_t cold = hot == left ? right : left;
  const double hot_zero_fraction = tree.nodes[hot].cover / nd.cover;
  const double cold_zero_fraction = tree.nodes[cold].cover / nd.cover;
  double incoming_zero_fraction = 1.0;
  double incoming_one_fraction = 1.0;

  // A feature met before on this path gets unwound and re-extended with the
  // combined fractions of both occurrences.
  unsigned path_index = 0;
  for (; path_index <= unique_depth; ++path_index) {
    if (path[path_index].feature == nd.split_feature) break;
  }
  if (path_index != unique_depth + 1) {
    incoming_zero_fraction = path[path_index].zero_fraction;
    incoming_one_fraction = path[path_index].one_fraction;
    unwind_path(path, unique_depth, path_index);
    unique_depth -= 1;
  }

  tree_shap_recurse(tree, x, phi, hot, unique_depth + 1, path,
                    hot_zero_fraction * incoming_zero_fraction, incoming_one_fraction,
                    nd.split_feature);
  tree_shap_recurse(tree, x, phi, cold, unique_depth + 1, path,
                    cold_zero_fraction * incoming_zero_fraction, 0.0,
                    nd.split_feature);
}

inline void tree_shap(const Tree& tree, std::span<const double> x, double* phi) {
  const int maxd = tree_max_depth(tree) + 2;
  std::vector<PathElement> storage(static_cast<std::size_t>(maxd * (maxd + 1)) / 2);
  tree_shap_recurse(tree, x, phi, 0, 0, storage.data(), 1.0, 1.0, -1);
}

// ---------------------------------------------------------------------------
// Interventional mode: per background row the per-tree game on each leaf is
// "reached iff every x-side path feature is in the coalition and no b-side
// feature is", whose Shapley values have a closed form in the counts of the
// two feature groups.
// ---------------------------------------------------------------------------

struct InterventionalWorkspace {
  struct FeatureState {
    int conditions = 0;
    int x_fail = 0;
    int b_fail = 0;
  };
  std::vector<FeatureState> state;    // indexed by feature
  std::vector<int> path_features;     // distinct features on the current path
  std::vector<int> pos_features;      // x passes, background fails
  std::vector<int> neg_features;      // background passes, x fails
  std::vector<double> factorial;

  explicit InterventionalWorkspace(std::size_t feature_count, int max_depth)
      : state(feature_count) {
    factorial.resize(static_cast<std::size_t>(max_depth) + 2);
    factorial[0] = 1.0;
    for (std::size_t i = 1; i < factorial.size(); ++i) {
      factorial[i] = factorial[i - 1] * static_cast<double>(i);
    }
  }
};

inline void interventional_recurse(const Tree& tree, std::size_t node,
                                   std::span<const double> x, std::span<const double> b,
                                   double scale, InterventionalWorkspace& ws,
                                   double* phi, double& base_acc) {
  const TreeNode& nd = tree.nodes[node];
  if (nd.is_leaf()) {
    ws.pos_features.clear();
    ws.neg_features.clear();
    for (int f : ws.path_features) {
      const auto& st = ws.state[static_cast<std::size_t>(f)];
      const bool x_in = st.x_fail == 0;
      const bool b_in = st.b_fail == 0;
      if (!x_in && !b_in) return;  // unreachable for every coalition
      if (x_in && !b_in) ws.pos_features.push_back(f);
      if (!x_in && b_in) ws.neg_features.push_back(f);
    }
    const auto p = ws.pos_features.size();
    const auto q = ws.neg_features.size();
    if (p == 0) base_acc += scale * nd.leaf_value;  // background reaches this leaf
    if (p + q == 0) return;
    const double denom = ws.factorial[p + q];
    if (p > 0) {
      const double w = scale * nd.leaf_value * ws.factorial[p - 1] * ws.factorial[q] / denom;
      for (int f : ws.pos_features) phi[f] += w;
    }
    if (q > 0) {
      const double w = scale * nd.leaf_value * ws.factorial[p] * ws.factorial[q - 1] / denom;
      for (int f : ws.neg_features) phi[f] -= w;
    }
    return;
  }

  const int f = nd.split_feature;
  const auto fi = static_cast<std::size_t>(f);
  const bool x_left = x[fi] < nd.threshold;
  const bool b_left = b[fi] < nd.threshold;

  auto push = [&](bool x_pass, bool b_pass) {
    auto& st = ws.state[fi];
    if (st.conditions == 0) ws.path_features.push_back(f);
    ++st.conditions;
    if (!x_pass) ++st.x_fail;
    if (!b_pass) ++st.b_fail;
  };
  auto pop = [&](bool x_pass, bool b_pass) {
    auto& st = ws.state[fi];
    --st.conditions;
    if (!x_pass) --st.x_fail;
    if (!b_pass) --st.b_fail;
    if (st.conditions == 0) ws.path_features.pop_back();
  };

  push(x_left, b_left);
  interventional_recurse(tree, static_cast<std::size_t>(nd.left), x, b, scale, ws, phi,
                         base_acc);
  pop(x_left, b_left);
  push(!x_left, !b_left);
  interventional_recurse(tree, static_cast<std::size_t>(nd.right), x, b, scale, ws, phi,
                         base_acc);
  pop(!x_left, !b_left);
}

}  // namespace detail

/// Model output when only the features in `coalition` are known.
inline double coalition_value(const TreeEnsemble& m, std::span<const double> x,
                              const std::vector<bool>& coalition,
                              const ConditioningRef& ref) {
  if (x.size() != m.feature_count || coalition.size() != m.feature_count) {
    throw DataError("coalition_value: row or subset width mismatch");
  }
  detail::validate_ref(ref, m.feature_count);
  return detail::coalition_value_impl(
      m, x, [&](std::size_t f) { return coalition[f]; }, ref);
}

/// Subset-enumeration attribution: the weighted sum over all coalitions,
/// exactly as defined. Guarded to at most 20 features.
inline Attribution exact_shapley(const TreeEnsemble& m, std::span<const double> x,
                                 const ConditioningRef& ref) {
  const std::size_t n = m.feature_count;
  if (n > 20) {
    throw ConfigError("exact_shapley enumerates 2^n coalitions and refuses n > 20; "
                      "use fast_shapley");
  }
  if (x.size() != n) throw DataError("exact_shapley: row width mismatch");
  detail::validate_ref(ref, n);

  const std::uint32_t full = n == 0 ? 0u : (std::uint32_t{1} << n) - 1u;
  std::vector<double> value(static_cast<std::size_t>(full) + 1);
  for (std::uint32_t mask = 0; mask <= full; ++mask) {
    value[mask] = detail::coalition_value_impl(
        m, x, [&](std::size_t f) { return (mask >> f) & 1u; }, ref);
    if (mask == full) break;  // avoid wrap at n == 32
  }

  // weight[s] = s! (n-s-1)! / n! = 1 / (n * C(n-1, s))
  std::vector<double> weight(n);
  if (n > 0) {
    std::vector<double> binom(n, 0.0);
    binom[0] = 1.0;
    for (std::size_t row = 1; row < n; ++row) {
      for (std::size_t j = row; j > 0; --j) binom[j] += binom[j - 1];
    }
    for (std::size_t s = 0; s < n; ++s) {
      weight[s] = 1.0 / (static_cast<double>(n) * binom[s]);
    }
  }

  Attribution att;
  att.phi.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint32_t bit = std::uint32_t{1} << i;
    for (std::uint32_t mask = 0; mask <= full; ++mask) {
      if (mask & bit) continue;
      att.phi[i] += weight[std::popcount(mask)] * (value[mask | bit] - value[mask]);
      if (mask == full) break;
    }
  }
  att.base_value = value[0];
  att.output = value[full];
  return att;
}

/// Polynomial-time attribution, componentwise equal to exact_shapley.
inline Attribution fast_shapley(const TreeEnsemble& m, std::span<const double> x,
                                const ConditioningRef& ref) {
  if (x.size() != m.feature_count) throw DataError("fast_shapley: row width mismatch");
  detail::validate_ref(ref, m.feature_count);

  Attribution att;
  att.phi.assign(m.feature_count, 0.0);
  att.output = predict_margin(m, x);

  if (ref.mode == Conditioning::path_dependent) {
    att.base_value = m.base_margin();
    for (const Tree& tree : m.trees) {
      att.base_value += detail::tree_expected_value(tree);
      detail::tree_shap(tree, x, att.phi.data());
    }
    return att;
  }

  const Matrix& bg = *ref.background;
  int max_depth = 0;
  for (const Tree& tree : m.trees) {
    max_depth = std::max(max_depth, detail::tree_max_depth(tree));
  }
  detail::InterventionalWorkspace ws(m.feature_count, max_depth);
  const double scale = 1.0 / static_cast<double>(bg.rows());
  double base_acc = 0.0;
  for (std::size_t b = 0; b < bg.rows(); ++b) {
    for (const Tree& tree : m.trees) {
      detail::interventional_recurse(tree, 0, x, bg.row(b), scale, ws, att.phi.data(),
                                     base_acc);
    }
  }
  att.base_value = m.base_margin() + base_acc;
  return att;
}

inline std::vector<Attribution> batch_shapley(const TreeEnsemble& m, const Matrix& X,
                                              const ConditioningRef& ref) {
  std::vector<Attribution> out;
  out.reserve(X.rows());
  for (std::size_t r = 0; r < X.rows(); ++r) {
    out.push_back(fast_shapley(m, X.row(r), ref));
  }
  return out;
}

/// CSV export: one row per instance; header is the encoded column names plus
/// base_value and output.
inline void write_attributions_csv(const std::vector<Attribution>& atts,
                                   const std::vector<std::string>& column_names,
                                   const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write file: " + path);
  for (const auto& name : column_names) {
    out << detail::csv_escape(name, ',') << ',';
  }
  out << "base_value,output\n";
  for (const Attribution& att : atts) {
    if (att.phi.size() != column_names.size()) {
      throw DataError("write_attributions_csv: attribution width mismatch");
    }
    for (double p : att.phi) out << format_double(p) << ',';
    out << format_double(att.base_value) << ',' << format_double(att.output) << "\n";
  }
}

}  // namespace treeglass

#endif  // TREEGLASS_SHAPLEY_HPP
