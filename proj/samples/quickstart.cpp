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

// Minimal library walkthrough: load a CSV, encode it two ways, train, and
// print each encoding's metrics plus the strongest per-value attribution.
//
//   ./quickstart tests/data/synthetic_planted.csv label pos

#include <cstdio>

#include "treeglass/treeglass.hpp"

int main(int argc, char** argv) {
  if (argc < 4) {
    std::fprintf(stderr, "usage: %s <csv> <label-column> <positive-label>\n", argv[0]);
    return 2;
  }
  using namespace treeglass;

  CsvOptions options;
  options.positive_label = argv[3];
  Dataset ds = load_csv(argv[1], argv[2], options);
  auto [train_ds, test_ds] = stratified_split(ds, 0.2, 42);

  for (SchemeKind kind : {SchemeKind::label, SchemeKind::one_hot}) {
    Encoder encoder = Encoder::fit(ds, EncodingScheme{kind});
    EncodedMatrix train_m = encoder.transform(train_ds);
    EncodedMatrix test_m = encoder.transform(test_ds);

    TreeEnsemble model = train(train_m, train_ds.labels);
    MetricsReport metrics = evaluate(model, test_m, test_ds.labels);
    std::printf("%-8s f1=%.3f accuracy=%.3f\n", scheme_name(kind).c_str(), metrics.f1,
                metrics.accuracy);

    auto atts = batch_shapley(model, test_m.values, ConditioningRef::path_dependent());
    GlobalImportance gi = global_importance(atts, test_m.column_names);
    auto grouped = group_by_feature(gi, test_m.provenance);
    if (!grouped.empty() && !grouped[0].per_value.empty()) {
      const auto& best = *std::max_element(
          grouped[0].per_value.begin(), grouped[0].per_value.end(),
          [](const auto& a, const auto& b) { return a.second < b.second; });
      std::printf("  strongest group: %s (total %.4f), top value %s = %.4f\n",
                  grouped[0].feature.c_str(), grouped[0].total, best.first.c_str(),
                  best.second);
    }
  }
  return 0;
}
