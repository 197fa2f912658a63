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

#ifndef TREEGLASS_AGGREGATE_HPP
#define TREEGLASS_AGGREGATE_HPP

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "treeglass/core.hpp"
#include "treeglass/encoders.hpp"
#include "treeglass/shapley.hpp"

namespace treeglass {

enum class ImportanceScope { encoded_column, source_feature };

/// Mean-|phi| summary. `entries` is the ranking view; `per_column` keeps the
/// scores in encoded-column order so grouping can realign them with the
/// provenance map.
struct GlobalImportance {
  std::vector<std::pair<std::string, double>> entries;  // desc, ties lexicographic
  ImportanceScope scope = ImportanceScope::encoded_column;
  std::vector<std::string> names;   // encoded-column order
  std::vector<double> per_column;   // encoded-column order
};

inline GlobalImportance global_importance(const std::vector<Attribution>& atts,
                                          const std::vector<std::string>& names) {
  if (atts.empty()) throw DataError("global_importance: no attributions");
  for (const Attribution& att : atts) {
    if (att.phi.size() != names.size()) {
      throw DataError("global_importance: attribution width " +
                      std::to_string(att.phi.size()) + " != name count " +
                      std::to_string(names.size()));
    }
  }
  GlobalImportance gi;
  gi.scope = ImportanceScope::encoded_column;
  gi.names = names;
  gi.per_column.assign(names.size(), 0.0);
  for (const Attribution& att : atts) {
    for (std::size_t j = 0; j < names.size(); ++j) {
      gi.per_column[j] += std::fabs(att.phi[j]);
    }
  }
  for (double& v : gi.per_column) v /= static_cast<double>(atts.size());
  for (std::size_t j = 0; j < names.size(); ++j) {
    gi.entries.emplace_back(names[j], gi.per_column[j]);
  }
  std::sort(gi.entries.begin(), gi.entries.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  return gi;
}

struct GroupedImportance {
  std::string feature;
  std::vector<std::pair<std::string, double>> per_value;  // encoded-column order
  double total = 0.0;
};

/// Folds encoded-column importances back onto source features: the feature
/// total is the sum over its encoded columns. per_value labels carry the
/// category string for one-hot columns and the encoded column name otherwise.
inline std::vector<GroupedImportance> group_by_feature(const GlobalImportance& gi,
                                                       const ProvenanceMap& provenance) {
  if (gi.scope != ImportanceScope::encoded_column) {
    throw ConfigError("group_by_feature: input must be encoded-column scoped");
  }
  if (provenance.entries.size() != gi.per_column.size()) {
    throw DataError("group_by_feature: provenance covers " +
                    std::to_string(provenance.entries.size()) + " columns, scores " +
                    std::to_string(gi.per_column.size()));
  }
  std::vector<bool> seen(gi.per_column.size(), false);
  std::map<std::string, GroupedImportance> groups;
  std::vector<std::string> order;  // first-appearance order by column index
  for (const ProvenanceEntry& e : provenance.entries) {
    if (e.encoded_column >= gi.per_column.size() || seen[e.encoded_column]) {
      throw DataError("group_by_feature: provenance does not partition the columns");
    }
    seen[e.encoded_column] = true;
    auto [it, inserted] = groups.try_emplace(e.source_feature);
    if (inserted) {
      it->second.feature = e.source_feature;
      order.push_back(e.source_feature);
    }
    std::string label =
        e.source_value ? *e.source_value : gi.names[e.encoded_column];
    double score = gi.per_column[e.encoded_column];
    it->second.per_value.emplace_back(std::move(label), score);
    it->second.total += score;
  }
  std::vector<GroupedImportance> out;
  out.reserve(order.size());
  for (const auto& name : order) out.push_back(std::move(groups.at(name)));
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.total != b.total) return a.total > b.total;
    return a.feature < b.feature;
  });
  return out;
}

struct BreakdownEntry {
  std::string name;
  std::string value_shown;
  double phi = 0.0;
};

/// Per-instance contributions sorted by |phi| descending. value_shown renders
/// the instance's actual value; for one-hot columns that is the category
/// string when the indicator is set and "not <value>" otherwise.
inline std::vector<BreakdownEntry> local_breakdown(const Attribution& att,
                                                   const std::vector<std::string>& names,
                                                   std::span<const double> x,
                                                   const ProvenanceMap& provenance) {
  if (att.phi.size() != names.size() || x.size() != names.size() ||
      provenance.entries.size() != names.size()) {
    throw DataError("local_breakdown: width mismatch");
  }
  if (!check_additivity(att, 1e-9)) {
    throw DataError("local_breakdown: attribution does not walk from base_value "
                    "to output");
  }
  std::vector<BreakdownEntry> out;
  out.reserve(names.size());
  for (std::size_t j = 0; j < names.size(); ++j) {
    BreakdownEntry e;
    e.name = names[j];
    e.phi = att.phi[j];
    const auto& src = provenance.entries[j];
    if (src.source_value) {
      e.value_shown = x[j] == 1.0 ? *src.source_value : "not " + *src.source_value;
    } else {
      e.value_shown = format_double(x[j]);
    }
    out.push_back(std::move(e));
  }
  std::sort(out.begin(), out.end(), [](const BreakdownEntry& a, const BreakdownEntry& b) {
    double fa = std::fabs(a.phi), fb = std::fabs(b.phi);
    if (fa != fb) return fa > fb;
    return a.name < b.name;
  });
  return out;
}

inline void write_importance_csv(const GlobalImportance& gi, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write file: " + path);
  out << "name,score\n";
  for (const auto& [name, score] : gi.entries) {
    out << detail::csv_escape(name, ',') << ',' << format_double(score) << "\n";
  }
}

inline void write_grouped_csv(const std::vector<GroupedImportance>& groups,
                              const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write file: " + path);
  out << "name,score,group\n";
  for (const auto& g : groups) {
    for (const auto& [value, score] : g.per_value) {
      out << detail::csv_escape(value, ',') << ',' << format_double(score) << ','
          << detail::csv_escape(g.feature, ',') << "\n";
    }
  }
}

}  // namespace treeglass

#endif  // TREEGLASS_AGGREGATE_HPP
