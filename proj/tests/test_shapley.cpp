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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "test_support.hpp"
#include "treeglass/shapley.hpp"

using namespace treeglass;
using Catch::Matchers::WithinAbs;

namespace {

// Frozen by tests/oracle/shapley_fixture.py (exact rational arithmetic over
// all 2^3 coalitions). The tree and instance live in test_support.hpp.
const std::vector<double> kPathPhi = {-43.0 / 60.0, -8.0 / 15.0, 3.0 / 20.0};
const double kPathBase = 3.0 / 5.0;
const std::vector<double> kInterventionalPhi = {0.0, -1.5, 0.75};
const double kInterventionalBase = 0.25;
const double kOutput = -0.5;
const std::vector<double> kInstance = {0.3, 0.7, 0.1};

Matrix fixture_background() {
  Matrix bg(2, 3);
  bg.at(0, 0) = 0.9; bg.at(0, 1) = 0.1; bg.at(0, 2) = 0.9;
  bg.at(1, 0) = 0.2; bg.at(1, 1) = 0.2; bg.at(1, 2) = 0.8;
  return bg;
}

void expect_match(const Attribution& got, const std::vector<double>& phi, double base,
                  double output, double tol) {
  REQUIRE(got.phi.size() == phi.size());
  for (std::size_t i = 0; i < phi.size(); ++i) {
    REQUIRE_THAT(got.phi[i], WithinAbs(phi[i], tol));
  }
  REQUIRE_THAT(got.base_value, WithinAbs(base, tol));
  REQUIRE_THAT(got.output, WithinAbs(output, tol));
}

}  // namespace

TEST_CASE("exact and fast attributions reproduce the frozen oracle fixture") {
  TreeEnsemble m = tgtest::oracle_fixture_ensemble();
  Matrix bg = fixture_background();

  SECTION("path-dependent") {
    auto ref = ConditioningRef::path_dependent();
    expect_match(exact_shapley(m, kInstance, ref), kPathPhi, kPathBase, kOutput, 1e-12);
    expect_match(fast_shapley(m, kInstance, ref), kPathPhi, kPathBase, kOutput, 1e-12);
  }
  SECTION("interventional") {
    auto ref = ConditioningRef::interventional(bg);
    expect_match(exact_shapley(m, kInstance, ref), kInterventionalPhi,
                 kInterventionalBase, kOutput, 1e-12);
    expect_match(fast_shapley(m, kInstance, ref), kInterventionalPhi,
                 kInterventionalBase, kOutput, 1e-12);
  }
}

TEST_CASE("coalition_value special cases") {
  TreeEnsemble m = tgtest::oracle_fixture_ensemble();
  Matrix bg = fixture_background();

  SECTION("full coalition equals the margin") {
    std::vector<bool> all(3, true);
    REQUIRE(coalition_value(m, kInstance, all, ConditioningRef::path_dependent()) ==
            predict_margin(m, kInstance));
    REQUIRE(coalition_value(m, kInstance, all, ConditioningRef::interventional(bg)) ==
            predict_margin(m, kInstance));
  }
  SECTION("empty coalition, interventional, is the mean background margin") {
    std::vector<bool> none(3, false);
    double mean = 0.5 * (predict_margin(m, bg.row(0)) + predict_margin(m, bg.row(1)));
    REQUIRE_THAT(coalition_value(m, kInstance, none, ConditioningRef::interventional(bg)),
                 WithinAbs(mean, 1e-12));
  }
  SECTION("empty coalition, path-dependent, is the cover-weighted average") {
    TreeEnsemble stump = tgtest::single_tree(
        {tgtest::split(0, 0.5, 1, 2, 100.0), tgtest::leaf(2.0, 30.0),
         tgtest::leaf(-1.0, 70.0)},
        1);
    std::vector<bool> none(1, false);
    std::vector<double> x = {0.1};
    REQUIRE_THAT(coalition_value(stump, x, none, ConditioningRef::path_dependent()),
                 WithinAbs(0.3 * 2.0 + 0.7 * -1.0, 1e-12));
  }
  SECTION("interventional without background is refused") {
    ConditioningRef ref;
    ref.mode = Conditioning::interventional;
    std::vector<bool> none(3, false);
    REQUIRE_THROWS_AS(coalition_value(m, kInstance, none, ref), ConfigError);
  }
}

TEST_CASE("constant model gets zero attributions") {
  TreeEnsemble m = tgtest::single_tree({tgtest::leaf(0.4, 5.0)}, 3);
  m.trees.push_back(Tree{{tgtest::leaf(0.4, 5.0)}});
  std::vector<double> x = {0.1, 0.2, 0.3};
  for (auto ref : {ConditioningRef::path_dependent()}) {
    Attribution att = exact_shapley(m, x, ref);
    for (double p : att.phi) REQUIRE(p == 0.0);
    REQUIRE_THAT(att.base_value, WithinAbs(0.8, 1e-12));
    Attribution fast = fast_shapley(m, x, ref);
    for (double p : fast.phi) REQUIRE(p == 0.0);
  }
}

TEST_CASE("single-feature model attributes the whole gap to that feature") {
  TreeEnsemble m = tgtest::single_tree(
      {tgtest::split(0, 0.5, 1, 2, 10.0), tgtest::leaf(1.0, 4.0), tgtest::leaf(-2.0, 6.0)},
      1);
  std::vector<double> x = {0.0};
  Attribution att = exact_shapley(m, x, ConditioningRef::path_dependent());
  REQUIRE_THAT(att.phi[0], WithinAbs(att.output - att.base_value, 1e-12));
}

TEST_CASE("fast_shapley matches exact_shapley on randomized ensembles") {
  Rng rng(20240501);
  int checked = 0;
  for (int round = 0; round < 60; ++round) {
    std::size_t n = 2 + rng.bounded(9);  // up to 10 features
    TreeEnsemble m = tgtest::random_ensemble(rng, n, 6, 4);
    Matrix bg = tgtest::random_matrix(rng, 1 + rng.bounded(4), n);
    for (int i = 0; i < 3; ++i) {
      auto x = tgtest::random_row(rng, n);
      for (int mode = 0; mode < 2; ++mode) {
        ConditioningRef ref = mode == 0 ? ConditioningRef::path_dependent()
                                        : ConditioningRef::interventional(bg);
        Attribution exact = exact_shapley(m, x, ref);
        Attribution fast = fast_shapley(m, x, ref);
        for (std::size_t f = 0; f < n; ++f) {
          REQUIRE_THAT(fast.phi[f], WithinAbs(exact.phi[f], 1e-8));
        }
        REQUIRE_THAT(fast.base_value, WithinAbs(exact.base_value, 1e-8));
        REQUIRE(check_additivity(exact, 1e-9));
        REQUIRE(check_additivity(fast, 1e-9));
        ++checked;
      }
    }
  }
  REQUIRE(checked >= 120);
}

TEST_CASE("features never split on receive exactly zero") {
  Rng rng(33);
  TreeEnsemble m = tgtest::random_ensemble(rng, 3, 4, 3);
  // widen to 6 features; columns 3..5 never appear in any tree
  m.feature_count = 6;
  m.column_names = {"c0", "c1", "c2", "c3", "c4", "c5"};
  Matrix bg = tgtest::random_matrix(rng, 3, 6);
  for (int i = 0; i < 10; ++i) {
    auto x = tgtest::random_row(rng, 6);
    for (int mode = 0; mode < 2; ++mode) {
      ConditioningRef ref = mode == 0 ? ConditioningRef::path_dependent()
                                      : ConditioningRef::interventional(bg);
      Attribution att = fast_shapley(m, x, ref);
      REQUIRE(att.phi[3] == 0.0);
      REQUIRE(att.phi[4] == 0.0);
      REQUIRE(att.phi[5] == 0.0);
    }
  }
}

TEST_CASE("duplicate columns receive symmetric attributions") {
  // Model trained on a matrix whose columns 0 and 1 are identical: build the
  // duplicated-tree scenario directly by alternating splits between the twins
  // with the same thresholds and covers.
  std::vector<TreeNode> nodes(7);
  nodes[0] = tgtest::split(0, 0.5, 1, 2, 10.0);
  nodes[1] = tgtest::split(1, 0.25, 3, 4, 6.0);
  nodes[2] = tgtest::split(1, 0.75, 5, 6, 4.0);
  nodes[3] = tgtest::leaf(1.5, 2.0);
  nodes[4] = tgtest::leaf(-0.5, 4.0);
  nodes[5] = tgtest::leaf(2.0, 3.0);
  nodes[6] = tgtest::leaf(-1.0, 1.0);
  TreeEnsemble m = tgtest::single_tree(std::move(nodes), 2);
  std::vector<TreeNode> mirrored(7);
  mirrored[0] = tgtest::split(1, 0.5, 1, 2, 10.0);
  mirrored[1] = tgtest::split(0, 0.25, 3, 4, 6.0);
  mirrored[2] = tgtest::split(0, 0.75, 5, 6, 4.0);
  mirrored[3] = tgtest::leaf(1.5, 2.0);
  mirrored[4] = tgtest::leaf(-0.5, 4.0);
  mirrored[5] = tgtest::leaf(2.0, 3.0);
  mirrored[6] = tgtest::leaf(-1.0, 1.0);
  m.trees.push_back(Tree{std::move(mirrored)});

  Rng rng(11);
  Matrix bg(3, 2);
  for (std::size_t r = 0; r < 3; ++r) {
    double v = rng.next_unit();
    bg.at(r, 0) = v;  // background rows keep the twin columns identical
    bg.at(r, 1) = v;
  }
  for (int i = 0; i < 20; ++i) {
    double v = rng.next_unit();
    std::vector<double> x = {v, v};
    for (int mode = 0; mode < 2; ++mode) {
      ConditioningRef ref = mode == 0 ? ConditioningRef::path_dependent()
                                      : ConditioningRef::interventional(bg);
      Attribution att = fast_shapley(m, x, ref);
      REQUIRE_THAT(att.phi[0], WithinAbs(att.phi[1], 1e-9));
    }
  }
}

TEST_CASE("scaling every leaf by a power of two scales attributions exactly") {
  Rng rng(77);
  TreeEnsemble m = tgtest::random_ensemble(rng, 5, 4, 4);
  TreeEnsemble scaled = m;
  for (Tree& tree : scaled.trees) {
    for (TreeNode& nd : tree.nodes) {
      if (nd.is_leaf()) nd.leaf_value *= 2.0;
    }
  }
  auto x = tgtest::random_row(rng, 5);
  Attribution a = fast_shapley(m, x, ConditioningRef::path_dependent());
  Attribution b = fast_shapley(scaled, x, ConditioningRef::path_dependent());
  for (std::size_t f = 0; f < 5; ++f) {
    REQUIRE(b.phi[f] == 2.0 * a.phi[f]);
  }
  // the base offset is recovered through a subtraction, which reintroduces
  // one rounding step; phi above is exact
  REQUIRE_THAT(b.base_value - scaled.base_margin(),
               WithinAbs(2.0 * (a.base_value - m.base_margin()), 1e-12));
}

TEST_CASE("batch attribution is per-row independent") {
  Rng rng(314);
  TreeEnsemble m = tgtest::random_ensemble(rng, 4, 3, 3);
  Matrix X = tgtest::random_matrix(rng, 8, 4);
  auto ref = ConditioningRef::path_dependent();
  auto atts = batch_shapley(m, X, ref);
  REQUIRE(atts.size() == 8);
  for (std::size_t r = 0; r < 8; ++r) {
    Attribution single = fast_shapley(m, X.row(r), ref);
    REQUIRE(atts[r].phi == single.phi);
  }

  // permuted rows produce permuted outputs
  Matrix P(8, 4);
  for (std::size_t r = 0; r < 8; ++r) {
    for (std::size_t c = 0; c < 4; ++c) P.at(r, c) = X.at(7 - r, c);
  }
  auto permuted = batch_shapley(m, P, ref);
  for (std::size_t r = 0; r < 8; ++r) {
    REQUIRE(permuted[r].phi == atts[7 - r].phi);
  }

  REQUIRE(batch_shapley(m, Matrix(0, 4), ref).empty());
}

TEST_CASE("the enumeration guard refuses wide models") {
  TreeEnsemble m = tgtest::single_tree({tgtest::leaf(1.0, 1.0)}, 21);
  std::vector<double> x(21, 0.0);
  REQUIRE_THROWS_WITH(exact_shapley(m, x, ConditioningRef::path_dependent()),
                      Catch::Matchers::ContainsSubstring("fast_shapley"));
}

TEST_CASE("attribution CSV export writes one row per instance") {
  TreeEnsemble m = tgtest::oracle_fixture_ensemble();
  Matrix X(2, 3);
  for (std::size_t c = 0; c < 3; ++c) {
    X.at(0, c) = kInstance[c];
    X.at(1, c) = 0.9;
  }
  auto atts = batch_shapley(m, X, ConditioningRef::path_dependent());
  auto path = (tgtest::tmp_dir() / "atts.csv").string();
  write_attributions_csv(atts, m.column_names, path);
  std::string text = tgtest::read_file(path);
  REQUIRE(text.substr(0, text.find('\n')) == "c0,c1,c2,base_value,output");
  REQUIRE(std::count(text.begin(), text.end(), '\n') == 3);
}
