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

#ifndef TREEGLASS_GBDT_HPP
#define TREEGLASS_GBDT_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "treeglass/core.hpp"
#include "treeglass/encoders.hpp"

namespace treeglass {

struct TreeNode {
  std::int32_t left = -1;   // -1 marks a leaf
  std::int32_t right = -1;
  std::int32_t split_feature = -1;
  double threshold = 0.0;
  double leaf_value = 0.0;
  double cover = 0.0;  // sum of hessians routed through this node
  double gain = 0.0;   // split loss reduction; internal nodes only

  bool is_leaf() const { return left < 0; }
};

struct Tree {
  std::vector<TreeNode> nodes;  // node 0 is the root
};

/// Boosted binary-logistic ensemble. Margin = logit(base_score) plus the sum
/// of routed leaf values; probability = sigmoid(margin). Routing goes left
/// iff x[split_feature] < threshold.
struct TreeEnsemble {
  std::vector<Tree> trees;
  double base_score = 0.5;
  double learning_rate = 0.1;
  std::size_t feature_count = 0;
  std::vector<std::string> column_names;

  double base_margin() const { return logit(base_score); }
};

struct TrainParams {
  int n_trees = 100;
  int max_depth = 5;
  double learning_rate = 0.1;
  double lambda = 1.0;  // L2 on leaf values
  double gamma = 0.0;   // per-leaf split penalty
  double min_child_weight = 1.0;
  double base_score = 0.5;
};

struct TrainLog {
  // Regularized training loss after each boosting round.
  std::vector<double> round_loss;
};

struct MetricsReport {
  std::int64_t tp = 0, fp = 0, tn = 0, fn = 0;
  double accuracy = 0.0, precision = 0.0, recall = 0.0, f1 = 0.0;
};

inline double predict_margin(const TreeEnsemble& m, std::span<const double> x) {
  if (x.size() != m.feature_count) {
    throw DataError("predict: row width " + std::to_string(x.size()) +
                    " != feature count " + std::to_string(m.feature_count));
  }
  for (double v : x) {
    if (!std::isfinite(v)) throw DataError("predict: non-finite input value");
  }
  double margin = m.base_margin();
  for (const Tree& tree : m.trees) {
    std::size_t node = 0;
    while (!tree.nodes[node].is_leaf()) {
      const TreeNode& nd = tree.nodes[node];
      node = x[static_cast<std::size_t>(nd.split_feature)] < nd.threshold
                 ? static_cast<std::size_t>(nd.left)
                 : static_cast<std::size_t>(nd.right);
    }
    margin += tree.nodes[node].leaf_value;
  }
  return margin;
}

inline std::vector<double> predict_margin(const TreeEnsemble& m, const Matrix& X) {
  std::vector<double> out(X.rows());
  for (std::size_t r = 0; r < X.rows(); ++r) out[r] = predict_margin(m, X.row(r));
  return out;
}

inline double predict_probability(const TreeEnsemble& m, std::span<const double> x) {
  return sigmoid(predict_margin(m, x));
}

namespace detail {

struct NodeStats {
  double grad_sum = 0.0;
  double hess_sum = 0.0;
  std::size_t count = 0;
};

struct SplitCandidate {
  double gain = 0.0;  // only candidates with gain > 0 are kept
  std::int32_t feature = -1;
  double threshold = 0.0;
  double grad_left = 0.0;
  double hess_left = 0.0;
  std::size_t count_left = 0;
};

inline double split_gain(double gl, double hl, double gr, double hr, double lambda,
                         double gamma) {
  double parent = (gl + gr) * (gl + gr) / (hl + hr + lambda);
  return 0.5 * (gl * gl / (hl + lambda) + gr * gr / (hr + lambda) - parent) - gamma;
}

}  // namespace detail

/// Newton boosting with exact greedy split search. Split candidates are the
/// midpoints between consecutive distinct values present in a node; ties on
/// gain resolve to the lowest feature index, then the lowest threshold, which
/// makes training fully deterministic.
inline TreeEnsemble train(const EncodedMatrix& X, const std::vector<std::uint8_t>& y,
                          const TrainParams& params = {}, TrainLog* log = nullptr) {
  const std::size_t n = X.values.rows();
  const std::size_t k = X.values.cols();
  if (k == 0) throw DataError("train: zero-width feature matrix");
  if (n != y.size()) {
    throw DataError("train: matrix has " + std::to_string(n) + " rows but " +
                    std::to_string(y.size()) + " labels");
  }
  if (n < 2) throw DataError("train: need at least 2 rows");
  bool has_pos = false, has_neg = false;
  for (auto label : y) (label ? has_pos : has_neg) = true;
  if (!has_pos || !has_neg) throw DataError("train: labels contain a single class");
  if (params.n_trees < 0 || params.max_depth < 0) {
    throw ConfigError("train: n_trees and max_depth must be nonnegative");
  }
  if (!(params.base_score > 0.0 && params.base_score < 1.0)) {
    throw ConfigError("train: base_score must be in (0,1)");
  }
  if (params.lambda < 0.0 || params.gamma < 0.0 || params.min_child_weight < 0.0) {
    throw ConfigError("train: lambda, gamma, min_child_weight must be nonnegative");
  }

  TreeEnsemble model;
  model.base_score = params.base_score;
  model.learning_rate = params.learning_rate;
  model.feature_count = k;
  model.column_names = X.values.cols() == X.column_names.size()
                           ? X.column_names
                           : std::vector<std::string>(k);

  // Rows sorted by each feature once, reused at every level of every tree.
  // Values are gathered alongside so the split scans run over contiguous
  // memory instead of striding across the row-major matrix.
  std::vector<std::vector<std::uint32_t>> sorted(k);
  std::vector<std::vector<double>> sorted_values(k);
  for (std::size_t f = 0; f < k; ++f) {
    auto& order = sorted[f];
    order.resize(n);
    for (std::size_t r = 0; r < n; ++r) order[r] = static_cast<std::uint32_t>(r);
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
      double va = X.values.at(a, f), vb = X.values.at(b, f);
      if (va != vb) return va < vb;
      return a < b;
    });
    auto& values = sorted_values[f];
    values.resize(n);
    for (std::size_t j = 0; j < n; ++j) values[j] = X.values.at(order[j], f);
  }

  std::vector<double> margin(n, model.base_margin());
  std::vector<double> grad(n), hess(n);
  std::vector<std::uint32_t> node_of(n);
  double reg_total = 0.0;

  for (int round = 0; round < params.n_trees; ++round) {
    for (std::size_t r = 0; r < n; ++r) {
      double p = sigmoid(margin[r]);
      grad[r] = p - static_cast<double>(y[r]);
      hess[r] = p * (1.0 - p);
    }

    Tree tree;
    std::vector<detail::NodeStats> stats;
    {
      detail::NodeStats root;
      for (std::size_t r = 0; r < n; ++r) {
        root.grad_sum += grad[r];
        root.hess_sum += hess[r];
      }
      root.count = n;
      TreeNode root_node;
      root_node.cover = root.hess_sum;
      tree.nodes.push_back(root_node);
      stats.push_back(root);
    }
    std::fill(node_of.begin(), node_of.end(), 0u);
    std::vector<std::uint32_t> frontier = {0};

    auto finalize_leaf = [&](std::uint32_t id) {
      tree.nodes[id].leaf_value = -params.learning_rate * stats[id].grad_sum /
                                  (stats[id].hess_sum + params.lambda);
    };

    struct ScanState {
      double last = 0.0;
      double grad_sum = 0.0;
      double hess_sum = 0.0;
      std::size_t count = 0;
    };

    for (int depth = 0; depth < params.max_depth && !frontier.empty(); ++depth) {
      std::vector<std::int32_t> slot_of(tree.nodes.size(), -1);
      for (std::size_t s = 0; s < frontier.size(); ++s) {
        slot_of[frontier[s]] = static_cast<std::int32_t>(s);
      }
      std::vector<detail::SplitCandidate> best(frontier.size());
      std::vector<ScanState> scan(frontier.size());

      for (std::size_t f = 0; f < k; ++f) {
        std::fill(scan.begin(), scan.end(), ScanState{});
        const auto& order = sorted[f];
        const auto& values = sorted_values[f];
        for (std::size_t j = 0; j < n; ++j) {
          const std::uint32_t r = order[j];
          std::int32_t slot = slot_of[node_of[r]];
          if (slot < 0) continue;
          ScanState& st = scan[static_cast<std::size_t>(slot)];
          double v = values[j];
          if (st.count > 0 && v > st.last) {
            double thr = 0.5 * (st.last + v);
            if (!(thr > st.last)) thr = v;  // adjacent doubles round down
            const detail::NodeStats& node = stats[frontier[static_cast<std::size_t>(slot)]];
            double hess_right = node.hess_sum - st.hess_sum;
            if (st.hess_sum >= params.min_child_weight &&
                hess_right >= params.min_child_weight) {
              double gain = detail::split_gain(st.grad_sum, st.hess_sum,
                                               node.grad_sum - st.grad_sum,
                                               hess_right, params.lambda, params.gamma);
              detail::SplitCandidate& b = best[static_cast<std::size_t>(slot)];
              if (gain > b.gain) {
                b.gain = gain;
                b.feature = static_cast<std::int32_t>(f);
                b.threshold = thr;
                b.grad_left = st.grad_sum;
                b.hess_left = st.hess_sum;
                b.count_left = st.count;
              }
            }
          }
          st.grad_sum += grad[r];
          st.hess_sum += hess[r];
          st.count += 1;
          st.last = v;
        }
      }

      std::vector<std::uint32_t> next_frontier;
      for (std::size_t s = 0; s < frontier.size(); ++s) {
        std::uint32_t id = frontier[s];
        const detail::SplitCandidate& b = best[s];
        if (b.feature < 0) {
          finalize_leaf(id);
          continue;
        }
        detail::NodeStats left_stats{b.grad_left, b.hess_left, b.count_left};
        detail::NodeStats right_stats{stats[id].grad_sum - b.grad_left,
                                      stats[id].hess_sum - b.hess_left,
                                      stats[id].count - b.count_left};
        auto left_id = static_cast<std::uint32_t>(tree.nodes.size());
        auto right_id = left_id + 1;
        TreeNode left_node, right_node;
        left_node.cover = left_stats.hess_sum;
        right_node.cover = right_stats.hess_sum;
        tree.nodes.push_back(left_node);
        tree.nodes.push_back(right_node);
        stats.push_back(left_stats);
        stats.push_back(right_stats);

        TreeNode& parent = tree.nodes[id];
        parent.left = static_cast<std::int32_t>(left_id);
        parent.right = static_cast<std::int32_t>(right_id);
        parent.split_feature = b.feature;
        parent.threshold = b.threshold;
        parent.gain = b.gain;
        next_frontier.push_back(left_id);
        next_frontier.push_back(right_id);
      }

      for (std::size_t r = 0; r < n; ++r) {
        const TreeNode& nd = tree.nodes[node_of[r]];
        if (nd.is_leaf()) continue;
        node_of[r] = X.values.at(r, static_cast<std::size_t>(nd.split_feature)) <
                             nd.threshold
                         ? static_cast<std::uint32_t>(nd.left)
                         : static_cast<std::uint32_t>(nd.right);
      }
      frontier = std::move(next_frontier);
    }
    for (std::uint32_t id : frontier) finalize_leaf(id);

    for (std::size_t r = 0; r < n; ++r) {
      margin[r] += tree.nodes[node_of[r]].leaf_value;
    }
    if (log) {
      double tree_reg = 0.0;
      for (const TreeNode& nd : tree.nodes) {
        if (nd.is_leaf()) {
          tree_reg += params.gamma + 0.5 * params.lambda * nd.leaf_value * nd.leaf_value;
        }
      }
      reg_total += tree_reg;
      double data_loss = 0.0;
      for (std::size_t r = 0; r < n; ++r) {
        data_loss += softplus(margin[r]) - static_cast<double>(y[r]) * margin[r];
      }
      log->round_loss.push_back(data_loss + reg_total);
    }
    model.trees.push_back(std::move(tree));
  }
  return model;
}

inline MetricsReport evaluate(const TreeEnsemble& m, const EncodedMatrix& X,
                              const std::vector<std::uint8_t>& y,
                              double threshold = 0.5) {
  if (X.values.rows() != y.size()) {
    throw DataError("evaluate: matrix has " + std::to_string(X.values.rows()) +
                    " rows but " + std::to_string(y.size()) + " labels");
  }
  MetricsReport rep;
  for (std::size_t r = 0; r < X.values.rows(); ++r) {
    bool pred = sigmoid(predict_margin(m, X.values.row(r))) >= threshold;
    bool truth = y[r] != 0;
    if (pred && truth) ++rep.tp;
    else if (pred && !truth) ++rep.fp;
    else if (!pred && truth) ++rep.fn;
    else ++rep.tn;
  }
  double total = static_cast<double>(rep.tp + rep.fp + rep.tn + rep.fn);
  rep.accuracy = total > 0 ? static_cast<double>(rep.tp + rep.tn) / total : 0.0;
  rep.precision =
      rep.tp + rep.fp > 0 ? static_cast<double>(rep.tp) / static_cast<double>(rep.tp + rep.fp) : 0.0;
  rep.recall =
      rep.tp + rep.fn > 0 ? static_cast<double>(rep.tp) / static_cast<double>(rep.tp + rep.fn) : 0.0;
  rep.f1 = rep.precision + rep.recall > 0
               ? 2.0 * rep.precision * rep.recall / (rep.precision + rep.recall)
               : 0.0;
  return rep;
}

/// Total split gain per feature name, normalized to sum to 1 over the
/// features that were actually split on.
inline std::map<std::string, double> gain_importance(const TreeEnsemble& m) {
  if (m.trees.empty()) throw DataError("gain_importance: empty ensemble");
  std::map<std::string, double> totals;
  double sum = 0.0;
  for (const Tree& tree : m.trees) {
    for (const TreeNode& nd : tree.nodes) {
      if (nd.is_leaf()) continue;
      totals[m.column_names[static_cast<std::size_t>(nd.split_feature)]] += nd.gain;
      sum += nd.gain;
    }
  }
  if (sum > 0.0) {
    for (auto& [name, value] : totals) value /= sum;
  }
  return totals;
}

/// Top-k features by importance, descending, lexicographic on ties. Returns
/// the selected names and their cumulative importance share.
inline std::pair<std::vector<std::string>, double> select_top_features(
    const std::map<std::string, double>& importance, std::size_t k) {
  if (k < 1) throw ConfigError("select_top_features: k must be at least 1");
  std::vector<std::pair<std::string, double>> entries(importance.begin(),
                                                      importance.end());
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  if (k < entries.size()) entries.resize(k);
  std::vector<std::string> names;
  double cumulative = 0.0;
  for (const auto& [name, value] : entries) {
    names.push_back(name);
    cumulative += value;
  }
  return {names, cumulative};
}

inline nlohmann::json model_to_json(const TreeEnsemble& m) {
  nlohmann::json j;
  j["version"] = 1;
  j["base_score"] = m.base_score;
  j["learning_rate"] = m.learning_rate;
  j["feature_count"] = m.feature_count;
  j["column_names"] = m.column_names;
  j["trees"] = nlohmann::json::array();
  for (const Tree& tree : m.trees) {
    nlohmann::json jt;
    jt["nodes"] = nlohmann::json::array();
    for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
      const TreeNode& nd = tree.nodes[i];
      nlohmann::json jn;
      jn["id"] = i;
      jn["cover"] = nd.cover;
      if (nd.is_leaf()) {
        jn["kind"] = "leaf";
        jn["leaf_value"] = nd.leaf_value;
      } else {
        jn["kind"] = "split";
        jn["split_feature"] = nd.split_feature;
        jn["threshold"] = nd.threshold;
        jn["left"] = nd.left;
        jn["right"] = nd.right;
        jn["gain"] = nd.gain;
      }
      jt["nodes"].push_back(jn);
    }
    j["trees"].push_back(jt);
  }
  return j;
}

inline TreeEnsemble model_from_json(const nlohmann::json& j) {
  try {
    if (!j.contains("version") || j.at("version").get<int>() != 1) {
      throw DataError("model file: unsupported version");
    }
    TreeEnsemble m;
    m.base_score = j.at("base_score").get<double>();
    m.learning_rate = j.at("learning_rate").get<double>();
    m.feature_count = j.at("feature_count").get<std::size_t>();
    m.column_names = j.at("column_names").get<std::vector<std::string>>();
    for (const auto& jt : j.at("trees")) {
      Tree tree;
      tree.nodes.resize(jt.at("nodes").size());
      for (const auto& jn : jt.at("nodes")) {
        auto id = jn.at("id").get<std::size_t>();
        if (id >= tree.nodes.size()) throw DataError("model file: node id out of range");
        TreeNode& nd = tree.nodes[id];
        nd.cover = jn.at("cover").get<double>();
        if (jn.at("kind").get<std::string>() == "leaf") {
          nd.leaf_value = jn.at("leaf_value").get<double>();
        } else {
          nd.split_feature = jn.at("split_feature").get<std::int32_t>();
          nd.threshold = jn.at("threshold").get<double>();
          nd.left = jn.at("left").get<std::int32_t>();
          nd.right = jn.at("right").get<std::int32_t>();
          nd.gain = jn.at("gain").get<double>();
          if (nd.split_feature < 0 ||
              static_cast<std::size_t>(nd.split_feature) >= m.feature_count) {
            throw DataError("model file: split feature out of range");
          }
          if (nd.left < 0 || nd.right < 0 ||
              static_cast<std::size_t>(nd.left) >= tree.nodes.size() ||
              static_cast<std::size_t>(nd.right) >= tree.nodes.size()) {
            throw DataError("model file: child index out of range");
          }
        }
      }
      m.trees.push_back(std::move(tree));
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw DataError("model file: " + std::string(e.what()));
  }
}

inline void save_model(const TreeEnsemble& m, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write file: " + path);
  out << model_to_json(m).dump(2) << "\n";
  if (!out) throw IoError("write failed: " + path);
}

inline TreeEnsemble load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw DataError("model file: parse error: " + std::string(e.what()));
  }
  return model_from_json(j);
}

}  // namespace treeglass

#endif  // TREEGLASS_GBDT_HPP
