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

#ifndef TREEGLASS_TEST_SUPPORT_HPP
#define TREEGLASS_TEST_SUPPORT_HPP

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "treeglass/core.hpp"
#include "treeglass/gbdt.hpp"
#include "treeglass/tabular.hpp"

namespace tgtest {

inline std::filesystem::path tmp_dir() {
  auto dir = std::filesystem::current_path() / "test_tmp";
  std::filesystem::create_directories(dir);
  return dir;
}

inline std::string write_tmp(const std::string& name, const std::string& content) {
  auto path = tmp_dir() / name;
  std::ofstream out(path, std::ios::binary);
  out << content;
  return path.string();
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in),
                     std::istreambuf_iterator<char>());
}

// --- hand-built ensembles ---------------------------------------------------

inline treeglass::TreeNode leaf(double value, double cover) {
  treeglass::TreeNode n;
  n.leaf_value = value;
  n.cover = cover;
  return n;
}

inline treeglass::TreeNode split(int feature, double threshold, int left, int right,
                                 double cover, double gain = 1.0) {
  treeglass::TreeNode n;
  n.split_feature = feature;
  n.threshold = threshold;
  n.left = left;
  n.right = right;
  n.cover = cover;
  n.gain = gain;
  return n;
}

inline treeglass::TreeEnsemble single_tree(std::vector<treeglass::TreeNode> nodes,
                                           std::size_t feature_count,
                                           double base_score = 0.5) {
  treeglass::TreeEnsemble m;
  m.base_score = base_score;
  m.feature_count = feature_count;
  for (std::size_t i = 0; i < feature_count; ++i) {
    m.column_names.push_back("c" + std::to_string(i));
  }
  m.trees.push_back(treeglass::Tree{std::move(nodes)});
  return m;
}

// The frozen oracle fixture: depth-2 tree over 3 features; expected values
// derived by tests/oracle/shapley_fixture.py.
inline treeglass::TreeEnsemble oracle_fixture_ensemble() {
  std::vector<treeglass::TreeNode> nodes(7);
  nodes[0] = split(0, 0.5, 1, 2, 10.0);
  nodes[1] = split(1, 0.25, 3, 4, 6.0);
  nodes[2] = split(2, 0.75, 5, 6, 4.0);
  nodes[3] = leaf(1.5, 2.0);
  nodes[4] = leaf(-0.5, 4.0);
  nodes[5] = leaf(2.0, 3.0);
  nodes[6] = leaf(-1.0, 1.0);
  return single_tree(std::move(nodes), 3);
}

// --- randomized ensembles with consistent covers -----------------------------

inline int random_subtree(std::vector<treeglass::TreeNode>& nodes, treeglass::Rng& rng,
                          std::size_t feature_count, int depth, int max_depth,
                          double& cover_out) {
  bool make_leaf = depth >= max_depth || rng.next_unit() < 0.25;
  if (make_leaf) {
    double cover = 0.5 + 4.0 * rng.next_unit();
    int id = static_cast<int>(nodes.size());
    nodes.push_back(leaf(2.0 * rng.next_unit() - 1.0, cover));
    cover_out = cover;
    return id;
  }
  int id = static_cast<int>(nodes.size());
  nodes.push_back(treeglass::TreeNode{});
  double cover_left = 0.0, cover_right = 0.0;
  int left = random_subtree(nodes, rng, feature_count, depth + 1, max_depth, cover_left);
  int right = random_subtree(nodes, rng, feature_count, depth + 1, max_depth, cover_right);
  nodes[id] = split(static_cast<int>(rng.bounded(feature_count)), rng.next_unit(),
                    left, right, cover_left + cover_right,
                    0.1 + rng.next_unit());
  cover_out = cover_left + cover_right;
  return id;
}

inline treeglass::TreeEnsemble random_ensemble(treeglass::Rng& rng,
                                               std::size_t feature_count,
                                               std::size_t max_trees, int max_depth) {
  treeglass::TreeEnsemble m;
  m.base_score = 0.2 + 0.6 * rng.next_unit();
  m.feature_count = feature_count;
  for (std::size_t i = 0; i < feature_count; ++i) {
    m.column_names.push_back("c" + std::to_string(i));
  }
  std::size_t n_trees = 1 + rng.bounded(max_trees);
  for (std::size_t t = 0; t < n_trees; ++t) {
    std::vector<treeglass::TreeNode> nodes;
    double cover = 0.0;
    random_subtree(nodes, rng, feature_count, 0, max_depth, cover);
    m.trees.push_back(treeglass::Tree{std::move(nodes)});
  }
  return m;
}

inline std::vector<double> random_row(treeglass::Rng& rng, std::size_t width) {
  std::vector<double> row(width);
  for (double& v : row) v = rng.next_unit();
  return row;
}

inline treeglass::Matrix random_matrix(treeglass::Rng& rng, std::size_t rows,
                                       std::size_t cols) {
  treeglass::Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) m.at(r, c) = rng.next_unit();
  }
  return m;
}

inline treeglass::EncodedMatrix as_encoded(treeglass::Matrix values) {
  treeglass::EncodedMatrix em;
  for (std::size_t c = 0; c < values.cols(); ++c) {
    em.column_names.push_back("c" + std::to_string(c));
    treeglass::ProvenanceEntry e;
    e.encoded_column = c;
    e.source_feature = em.column_names.back();
    em.provenance.entries.push_back(e);
  }
  em.values = std::move(values);
  return em;
}

// Noisy nonlinear signal over uniform features; suitable for training-sanity
// checks.
inline std::pair<treeglass::EncodedMatrix, std::vector<std::uint8_t>>
make_training_data(treeglass::Rng& rng, std::size_t rows, std::size_t cols) {
  treeglass::Matrix X = random_matrix(rng, rows, cols);
  std::vector<std::uint8_t> y(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    double score = 2.5 * X.at(r, 0) - 1.5 * X.at(r, 1 % cols) +
                   (X.at(r, 2 % cols) > 0.5 ? 1.0 : -1.0);
    double p = treeglass::sigmoid(score);
    y[r] = rng.next_unit() < p ? 1 : 0;
  }
  bool has0 = false, has1 = false;
  for (auto l : y) (l ? has1 : has0) = true;
  if (!has0) y[0] = 0;
  if (!has1) y[1] = 1;
  return {as_encoded(std::move(X)), std::move(y)};
}

}  // namespace tgtest

#endif  // TREEGLASS_TEST_SUPPORT_HPP
