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

#include <algorithm>
#include <set>

#include "test_support.hpp"
#include "treeglass/tabular.hpp"

using namespace treeglass;

namespace {

Dataset load_text(const std::string& name, const std::string& text,
                  const std::string& label_col, const std::string& positive,
                  char delimiter = ',') {
  CsvOptions options;
  options.delimiter = delimiter;
  options.positive_label = positive;
  return load_csv(tgtest::write_tmp(name, text), label_col, options);
}

}  // namespace

TEST_CASE("load_csv infers numeric columns and maps labels") {
  Dataset ds = load_text("basic.csv", "f,y\n1.5,m\n2,b\n3,m\n4,m\n", "y", "m");
  REQUIRE(ds.row_count == 4);
  REQUIRE(ds.schema.size() == 1);
  REQUIRE(ds.schema[0].kind == ColumnKind::numeric);
  REQUIRE(ds.columns[0].numeric == std::vector<double>{1.5, 2.0, 3.0, 4.0});
  REQUIRE(ds.labels == std::vector<std::uint8_t>{1, 0, 1, 1});
  REQUIRE(ds.positive_label == "m");
  REQUIRE(ds.negative_label == "b");
}

TEST_CASE("a single non-numeric cell makes the column categorical") {
  Dataset ds = load_text("cat.csv", "f,y\n1,m\n2,b\n3a,m\n", "y", "m");
  REQUIRE(ds.schema[0].kind == ColumnKind::categorical);
  const auto& values = ds.schema[0].distinct_values;
  REQUIRE(std::find(values.begin(), values.end(), "3a") != values.end());
  REQUIRE(std::is_sorted(values.begin(), values.end()));
}

TEST_CASE("load_csv error paths") {
  CsvOptions opt;
  opt.positive_label = "m";
  SECTION("missing file") {
    REQUIRE_THROWS_AS(load_csv("/nonexistent/nope.csv", "y", opt), IoError);
  }
  SECTION("missing label column") {
    REQUIRE_THROWS_AS(load_text("e1.csv", "f,y\n1,m\n2,b\n", "z", "m"), DataError);
  }
  SECTION("more than two label values") {
    REQUIRE_THROWS_AS(load_text("e2.csv", "f,y\n1,m\n2,b\n3,c\n", "y", "m"), DataError);
  }
  SECTION("single label value") {
    REQUIRE_THROWS_AS(load_text("e3.csv", "f,y\n1,m\n2,m\n", "y", "m"), DataError);
  }
  SECTION("positive label absent") {
    REQUIRE_THROWS_AS(load_text("e4.csv", "f,y\n1,a\n2,b\n", "y", "m"), DataError);
  }
  SECTION("no data rows") {
    REQUIRE_THROWS_AS(load_text("e5.csv", "f,y\n", "y", "m"), DataError);
  }
  SECTION("ragged row") {
    REQUIRE_THROWS_AS(load_text("e6.csv", "f,y\n1,m\n2\n", "y", "m"), DataError);
  }
  SECTION("missing cell") {
    REQUIRE_THROWS_AS(load_text("e7.csv", "f,y\n,m\n2,b\n", "y", "m"), DataError);
  }
  SECTION("duplicate column name") {
    REQUIRE_THROWS_AS(load_text("e8.csv", "f,f,y\n1,2,m\n3,4,b\n", "y", "m"), DataError);
  }
}

TEST_CASE("load_csv handles quoted fields") {
  Dataset ds = load_text("quoted.csv",
                         "f,y\n\"a,b\",m\n\"line\nbreak\",b\n\"qu\"\"ote\",m\n",
                         "y", "m");
  REQUIRE(ds.row_count == 3);
  const auto& values = ds.schema[0].distinct_values;
  REQUIRE(std::set<std::string>(values.begin(), values.end()) ==
          std::set<std::string>{"a,b", "line\nbreak", "qu\"ote"});
}

TEST_CASE("load_csv accepts custom delimiter and CRLF") {
  Dataset ds = load_text("semi.csv", "f;y\r\n1;m\r\n2;b\r\n", "y", "m", ';');
  REQUIRE(ds.row_count == 2);
  REQUIRE(ds.schema[0].kind == ColumnKind::numeric);
}

TEST_CASE("drop_column removes exactly one column") {
  Dataset ds = load_text("drop.csv", "a,b,y\n1,x,m\n2,z,b\n", "y", "m");
  Dataset dropped = drop_column(ds, "a");
  REQUIRE(dropped.schema.size() == 1);
  REQUIRE_FALSE(dropped.has_column("a"));
  REQUIRE(dropped.has_column("b"));
  REQUIRE(dropped.labels == ds.labels);
  REQUIRE_THROWS_AS(drop_column(ds, "nope"), DataError);
}

TEST_CASE("stratified split hits per-class counts exactly") {
  std::string text = "f,y\n";
  for (int i = 0; i < 75; ++i) text += std::to_string(i) + ",m\n";
  for (int i = 0; i < 25; ++i) text += std::to_string(100 + i) + ",b\n";
  Dataset ds = load_text("split.csv", text, "y", "m");

  auto [train, test] = stratified_split(ds, 0.2, 17);
  auto count_pos = [](const Dataset& d) {
    std::size_t n = 0;
    for (auto l : d.labels) n += l;
    return n;
  };
  REQUIRE(test.row_count == 20);
  REQUIRE(count_pos(test) == 15);
  REQUIRE(train.row_count == 80);
  REQUIRE(count_pos(train) == 60);
}

TEST_CASE("stratified split is deterministic and partitions the rows") {
  std::string text = "f,y\n";
  for (int i = 0; i < 40; ++i) {
    text += std::to_string(i) + "," + (i % 3 == 0 ? "m" : "b") + "\n";
  }
  Dataset ds = load_text("split2.csv", text, "y", "m");

  SplitIndices a = stratified_split_indices(ds, 0.3, 99);
  SplitIndices b = stratified_split_indices(ds, 0.3, 99);
  REQUIRE(a.train == b.train);
  REQUIRE(a.test == b.test);

  std::vector<std::size_t> all = a.train;
  all.insert(all.end(), a.test.begin(), a.test.end());
  std::sort(all.begin(), all.end());
  std::vector<std::size_t> expected(ds.row_count);
  for (std::size_t i = 0; i < ds.row_count; ++i) expected[i] = i;
  REQUIRE(all == expected);

  SplitIndices c = stratified_split_indices(ds, 0.3, 100);
  REQUIRE(a.test != c.test);  // seed matters
}

TEST_CASE("stratified split rejects degenerate classes") {
  Dataset ds = load_text("split3.csv", "f,y\n1,m\n2,m\n3,b\n", "y", "m");
  REQUIRE_THROWS_AS(stratified_split(ds, 0.5, 1), DataError);
  REQUIRE_THROWS_AS(stratified_split(ds, 0.0, 1), ConfigError);
}

TEST_CASE("csv round-trip reproduces the dataset exactly") {
  Rng rng(2024);
  for (int round = 0; round < 10; ++round) {
    std::string text = "num,cat,deep,y\n";
    std::size_t rows = 6 + rng.bounded(30);
    std::size_t pos = 0;
    for (std::size_t r = 0; r < rows; ++r) {
      double v = (rng.next_unit() - 0.5) * 1e6;
      std::string cat = "tok" + std::to_string(rng.bounded(5));
      if (r == 0) cat = "not numeric";  // pin the column as categorical
      std::string deep = rng.bounded(2) ? "x,\"y\"" : "line\nbreak";
      bool label = rng.bounded(2) || pos < 2;
      pos += label;
      text += format_double(v) + "," + detail::csv_escape(cat, ',') + "," +
              detail::csv_escape(deep, ',') + "," + (label ? "m" : "b") + "\n";
    }
    // ensure both classes exist
    text += "0,not numeric,tail,m\n0,not numeric,tail,b\n";

    Dataset first = load_text("roundtrip.csv", text, "y", "m");
    auto path = tgtest::tmp_dir() / "roundtrip_out.csv";
    write_csv(first, path.string());
    CsvOptions opt;
    opt.positive_label = "m";
    Dataset second = load_csv(path.string(), "y", opt);
    REQUIRE(first == second);
  }
}

TEST_CASE("subset keeps categorical codes valid") {
  Dataset ds = load_text("subset.csv", "c,y\napple,m\nbanana,b\ncherry,m\napple,b\n",
                         "y", "m");
  auto [train, test] = stratified_split(ds, 0.5, 3);
  for (const Dataset* part : {&train, &test}) {
    for (std::size_t r = 0; r < part->row_count; ++r) {
      REQUIRE(part->columns[0].codes[r] < part->schema[0].distinct_values.size());
    }
  }
}
