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

#ifndef TREEGLASS_TABULAR_HPP
#define TREEGLASS_TABULAR_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "treeglass/core.hpp"

namespace treeglass {

enum class ColumnKind { numeric, categorical };

struct ColumnSchema {
  std::string name;
  ColumnKind kind = ColumnKind::numeric;
  // Sorted lexicographically; empty for numeric columns.
  std::vector<std::string> distinct_values;

  bool operator==(const ColumnSchema&) const = default;
};

struct Column {
  std::vector<double> numeric;      // filled when the column is numeric
  std::vector<std::uint32_t> codes; // indices into distinct_values otherwise

  bool operator==(const Column&) const = default;
};

/// Immutable column-major table with binary labels. Categorical cells are
/// stored as indices into the schema's distinct_values.
struct Dataset {
  std::vector<ColumnSchema> schema;
  std::vector<Column> columns;
  std::vector<std::uint8_t> labels;
  std::size_t row_count = 0;

  // Label bookkeeping so a dataset can be written back to CSV losslessly.
  std::string label_name;
  std::string positive_label;
  std::string negative_label;

  bool operator==(const Dataset&) const = default;

  std::size_t column_index(std::string_view name) const {
    for (std::size_t i = 0; i < schema.size(); ++i) {
      if (schema[i].name == name) return i;
    }
    throw DataError("unknown column: " + std::string(name));
  }

  bool has_column(std::string_view name) const {
    for (const auto& s : schema) {
      if (s.name == name) return true;
    }
    return false;
  }

  /// Raw string form of a cell, as it would appear in CSV.
  std::string cell_string(std::size_t col, std::size_t row) const {
    if (schema[col].kind == ColumnKind::numeric) {
      return format_double(columns[col].numeric[row]);
    }
    return schema[col].distinct_values[columns[col].codes[row]];
  }
};

struct CsvOptions {
  char delimiter = ',';
  std::string positive_label;
};

namespace detail {

// RFC-4180 field splitting over a whole file: quoted fields may contain the
// delimiter, doubled quotes, and line breaks. Records end at an unquoted
// newline; CRLF and LF both accepted.
inline std::vector<std::vector<std::string>> parse_csv_text(
    std::string_view text, char delimiter) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool in_quotes = false;
  bool field_was_quoted = false;
  bool record_has_content = false;

  auto end_field = [&]() {
    record.push_back(field);
    field.clear();
    field_was_quoted = false;
  };
  auto end_record = [&]() {
    end_field();
    records.push_back(std::move(record));
    record.clear();
    record_has_content = false;
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        field.push_back(c);
      }
      continue;
    }
    if (c == '"' && field.empty() && !field_was_quoted) {
      in_quotes = true;
      field_was_quoted = true;
      record_has_content = true;
    } else if (c == delimiter) {
      end_field();
      record_has_content = true;
    } else if (c == '\n') {
      if (record_has_content || !field.empty() || !record.empty()) end_record();
    } else if (c == '\r') {
      // consumed; the following '\n' (if any) closes the record
      if (i + 1 >= text.size() || text[i + 1] != '\n') {
        if (record_has_content || !field.empty() || !record.empty()) end_record();
      }
    } else {
      field.push_back(c);
      record_has_content = true;
    }
  }
  if (in_quotes) throw DataError("csv: unterminated quoted field");
  if (record_has_content || !field.empty() || !record.empty()) end_record();
  return records;
}

inline bool needs_quoting(std::string_view s, char delimiter) {
  return s.find_first_of(std::string{delimiter, '"', '\n', '\r'}) !=
         std::string_view::npos;
}

inline std::string csv_escape(std::string_view s, char delimiter) {
  if (!needs_quoting(s, delimiter)) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out += "\"";
  return out;
}

}  // namespace detail

/// Loads a CSV with a header row, infers per-column schema, and extracts the
/// binary label column. A column is numeric iff every cell parses as a finite
/// decimal number; otherwise it is categorical with lexicographically sorted
/// distinct values. Empty cells are rejected.
inline Dataset load_csv(const std::string& path, const std::string& label_column,
                        const CsvOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  std::string text = buffer.str();

  auto records = detail::parse_csv_text(text, options.delimiter);
  if (records.empty()) throw DataError("csv: empty file: " + path);

  const std::vector<std::string>& header = records[0];
  if (records.size() < 2) throw DataError("csv: no data rows: " + path);

  std::size_t label_idx = header.size();
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == label_column) {
      label_idx = i;
      break;
    }
  }
  if (label_idx == header.size()) {
    throw DataError("csv: label column not found: " + label_column);
  }

  const std::size_t n_cols = header.size();
  const std::size_t n_rows = records.size() - 1;
  for (std::size_t r = 1; r < records.size(); ++r) {
    if (records[r].size() != n_cols) {
      throw DataError("csv: ragged row " + std::to_string(r) + ": expected " +
                      std::to_string(n_cols) + " fields, got " +
                      std::to_string(records[r].size()));
    }
    for (std::size_t c = 0; c < n_cols; ++c) {
      if (records[r][c].empty()) {
        throw DataError("csv: missing cell at row " + std::to_string(r) +
                        ", column \"" + header[c] + "\"");
      }
    }
  }

  {
    std::set<std::string> seen;
    for (const auto& name : header) {
      if (!seen.insert(name).second) {
        throw DataError("csv: duplicate column name: " + name);
      }
    }
  }

  // Labels: exactly two distinct values, positive_label names the 1 class.
  std::set<std::string> label_values;
  for (std::size_t r = 1; r < records.size(); ++r) {
    label_values.insert(records[r][label_idx]);
    if (label_values.size() > 2) {
      throw DataError("label column \"" + label_column +
                      "\" has more than two distinct values");
    }
  }
  if (label_values.size() < 2) {
    throw DataError("label column \"" + label_column +
                    "\" has fewer than two distinct values");
  }
  if (!label_values.count(options.positive_label)) {
    throw DataError("positive label \"" + options.positive_label +
                    "\" not present in label column \"" + label_column + "\"");
  }

  Dataset ds;
  ds.row_count = n_rows;
  ds.label_name = label_column;
  ds.positive_label = options.positive_label;
  for (const auto& v : label_values) {
    if (v != options.positive_label) ds.negative_label = v;
  }
  ds.labels.resize(n_rows);
  for (std::size_t r = 0; r < n_rows; ++r) {
    ds.labels[r] = records[r + 1][label_idx] == options.positive_label ? 1 : 0;
  }

  for (std::size_t c = 0; c < n_cols; ++c) {
    if (c == label_idx) continue;
    bool all_numeric = true;
    std::vector<double> parsed(n_rows);
    for (std::size_t r = 0; r < n_rows && all_numeric; ++r) {
      auto v = parse_double_strict(records[r + 1][c]);
      if (!v) all_numeric = false;
      else parsed[r] = *v;
    }
    ColumnSchema schema;
    schema.name = header[c];
    Column column;
    if (all_numeric) {
      schema.kind = ColumnKind::numeric;
      column.numeric = std::move(parsed);
    } else {
      schema.kind = ColumnKind::categorical;
      std::set<std::string> distinct;
      for (std::size_t r = 0; r < n_rows; ++r) distinct.insert(records[r + 1][c]);
      schema.distinct_values.assign(distinct.begin(), distinct.end());
      column.codes.resize(n_rows);
      std::map<std::string, std::uint32_t> code_of;
      for (std::uint32_t i = 0; i < schema.distinct_values.size(); ++i) {
        code_of[schema.distinct_values[i]] = i;
      }
      for (std::size_t r = 0; r < n_rows; ++r) {
        column.codes[r] = code_of[records[r + 1][c]];
      }
    }
    ds.schema.push_back(std::move(schema));
    ds.columns.push_back(std::move(column));
  }
  return ds;
}

/// Writes the dataset back to CSV. Numeric cells use shortest round-trip
/// decimals, so load_csv(write_csv(ds)) reproduces ds exactly.
inline void write_csv(const Dataset& ds, const std::string& path,
                      char delimiter = ',') {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write file: " + path);
  for (std::size_t c = 0; c < ds.schema.size(); ++c) {
    out << detail::csv_escape(ds.schema[c].name, delimiter) << delimiter;
  }
  out << detail::csv_escape(ds.label_name, delimiter) << "\n";
  for (std::size_t r = 0; r < ds.row_count; ++r) {
    for (std::size_t c = 0; c < ds.schema.size(); ++c) {
      out << detail::csv_escape(ds.cell_string(c, r), delimiter) << delimiter;
    }
    out << detail::csv_escape(ds.labels[r] ? ds.positive_label : ds.negative_label,
                              delimiter)
        << "\n";
  }
  if (!out) throw IoError("write failed: " + path);
}

inline Dataset drop_column(const Dataset& ds, const std::string& name) {
  std::size_t idx = ds.column_index(name);  // throws on unknown name
  Dataset out = ds;
  out.schema.erase(out.schema.begin() + static_cast<std::ptrdiff_t>(idx));
  out.columns.erase(out.columns.begin() + static_cast<std::ptrdiff_t>(idx));
  return out;
}

/// Row subset in the given order; schema and label metadata are preserved, so
/// categorical codes stay valid even when a part lacks some category.
inline Dataset subset_rows(const Dataset& ds, const std::vector<std::size_t>& rows) {
  Dataset out;
  out.schema = ds.schema;
  out.label_name = ds.label_name;
  out.positive_label = ds.positive_label;
  out.negative_label = ds.negative_label;
  out.row_count = rows.size();
  out.labels.reserve(rows.size());
  for (std::size_t r : rows) out.labels.push_back(ds.labels[r]);
  out.columns.resize(ds.columns.size());
  for (std::size_t c = 0; c < ds.columns.size(); ++c) {
    if (ds.schema[c].kind == ColumnKind::numeric) {
      out.columns[c].numeric.reserve(rows.size());
      for (std::size_t r : rows) out.columns[c].numeric.push_back(ds.columns[c].numeric[r]);
    } else {
      out.columns[c].codes.reserve(rows.size());
      for (std::size_t r : rows) out.columns[c].codes.push_back(ds.columns[c].codes[r]);
    }
  }
  return out;
}

struct SplitIndices {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

/// Seeded per-class shuffle, then prefix-taking. Per-class test counts are
/// round(fraction * class_count) clamped to [1, count-1], which keeps both
/// classes present on both sides and stays within one row of the exact
/// proportion.
inline SplitIndices stratified_split_indices(const Dataset& ds, double test_fraction,
                                             std::uint64_t seed) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    throw ConfigError("test_fraction must be in (0,1)");
  }
  std::vector<std::size_t> class_rows[2];
  for (std::size_t r = 0; r < ds.row_count; ++r) {
    class_rows[ds.labels[r]].push_back(r);
  }
  for (int cls = 0; cls < 2; ++cls) {
    if (class_rows[cls].size() < 2) {
      throw DataError("stratified split needs at least 2 rows per class; class " +
                      std::to_string(cls) + " has " +
                      std::to_string(class_rows[cls].size()));
    }
  }
  Rng rng(seed);
  SplitIndices out;
  for (int cls = 0; cls < 2; ++cls) {
    auto& rows = class_rows[cls];
    rng.shuffle(rows);
    auto n = static_cast<long long>(rows.size());
    long long take = std::llround(test_fraction * static_cast<double>(n));
    take = std::clamp(take, 1LL, n - 1);
    for (long long i = 0; i < n; ++i) {
      (i < take ? out.test : out.train).push_back(rows[static_cast<std::size_t>(i)]);
    }
  }
  std::sort(out.train.begin(), out.train.end());
  std::sort(out.test.begin(), out.test.end());
  return out;
}

inline std::pair<Dataset, Dataset> stratified_split(const Dataset& ds,
                                                    double test_fraction,
                                                    std::uint64_t seed) {
  SplitIndices idx = stratified_split_indices(ds, test_fraction, seed);
  return {subset_rows(ds, idx.train), subset_rows(ds, idx.test)};
}

}  // namespace treeglass

#endif  // TREEGLASS_TABULAR_HPP
