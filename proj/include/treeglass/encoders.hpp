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

#ifndef TREEGLASS_ENCODERS_HPP
#define TREEGLASS_ENCODERS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "treeglass/core.hpp"
#include "treeglass/tabular.hpp"

namespace treeglass {

enum class SchemeKind { label, one_hot, ordinal, binary };

inline std::string scheme_name(SchemeKind k) {
  switch (k) {
    case SchemeKind::label: return "label";
    case SchemeKind::one_hot: return "one_hot";
    case SchemeKind::ordinal: return "ordinal";
    case SchemeKind::binary: return "binary";
  }
  throw ConfigError("invalid scheme kind");
}

inline SchemeKind scheme_from_name(const std::string& name) {
  if (name == "label") return SchemeKind::label;
  if (name == "one_hot") return SchemeKind::one_hot;
  if (name == "ordinal") return SchemeKind::ordinal;
  if (name == "binary") return SchemeKind::binary;
  throw ConfigError("unknown encoding scheme: " + name);
}

struct EncodingScheme {
  SchemeKind kind = SchemeKind::label;
  // ordinal only: per-feature category order; codes follow this order, 1-based.
  std::map<std::string, std::vector<std::string>> ordinal_orders;
  // one_hot / binary only: expand numeric columns over their distinct values.
  // Right for datasets whose numeric columns are really categorical codes.
  bool treat_numeric_as_categorical = true;

  EncodingScheme() = default;
  EncodingScheme(SchemeKind k) : kind(k) {}  // NOLINT: intentional implicit

  bool operator==(const EncodingScheme&) const = default;
};

struct ProvenanceEntry {
  std::size_t encoded_column = 0;
  std::string source_feature;
  std::optional<std::string> source_value;  // one_hot only
  std::optional<int> bit_position;          // binary only

  bool operator==(const ProvenanceEntry&) const = default;
};

struct ProvenanceMap {
  std::vector<ProvenanceEntry> entries;  // ordered by encoded_column, 0..k-1

  bool operator==(const ProvenanceMap&) const = default;
};

/// Encoded columns of `feature`, in ascending index order.
inline std::vector<std::size_t> group_columns(const ProvenanceMap& provenance,
                                              const std::string& feature) {
  std::vector<std::size_t> out;
  for (const auto& e : provenance.entries) {
    if (e.source_feature == feature) out.push_back(e.encoded_column);
  }
  if (out.empty()) throw DataError("feature not present in provenance: " + feature);
  std::sort(out.begin(), out.end());
  return out;
}

struct EncodedMatrix {
  Matrix values;  // row-major
  std::vector<std::string> column_names;
  ProvenanceMap provenance;
  EncodingScheme scheme;
};

namespace detail {

inline std::size_t binary_width(std::size_t category_count) {
  std::size_t n = std::max<std::size_t>(category_count, 2);
  std::size_t width = 0;
  std::size_t reach = 1;
  while (reach < n) {
    reach *= 2;
    ++width;
  }
  return width;
}

}  // namespace detail

/// Frozen per-feature category tables plus the encoded-column layout.
/// Immutable after fit; transform is a pure function.
class Encoder {
 public:
  struct FeatureLayout {
    std::string name;
    ColumnKind source_kind = ColumnKind::numeric;
    bool passthrough = false;             // numeric column copied as-is
    std::vector<std::string> categories;  // empty for passthrough
    std::size_t width = 0;
    std::size_t offset = 0;  // first encoded column index
  };

  static Encoder fit(const Dataset& ds, const EncodingScheme& scheme) {
    if (ds.row_count == 0) throw DataError("fit_encoder: empty dataset");
    if (scheme.kind == SchemeKind::ordinal) {
      for (const auto& s : ds.schema) {
        if (s.kind == ColumnKind::categorical && !scheme.ordinal_orders.count(s.name)) {
          throw ConfigError("ordinal encoding: no order supplied for feature \"" +
                            s.name + "\"");
        }
      }
    }

    Encoder enc;
    enc.scheme_ = scheme;
    std::size_t offset = 0;
    for (std::size_t c = 0; c < ds.schema.size(); ++c) {
      const ColumnSchema& schema = ds.schema[c];
      FeatureLayout layout;
      layout.name = schema.name;
      layout.source_kind = schema.kind;
      layout.offset = offset;

      const bool expand_numeric =
          (scheme.kind == SchemeKind::one_hot || scheme.kind == SchemeKind::binary) &&
          scheme.treat_numeric_as_categorical;

      if (schema.kind == ColumnKind::numeric && !expand_numeric) {
        layout.passthrough = true;
        layout.width = 1;
      } else {
        if (schema.kind == ColumnKind::numeric) {
          // Distinct doubles in ascending order; category string is the
          // shortest round-trip decimal, so decoding recovers the exact value.
          // -0.0 folds into 0.0 so the string key matches at transform time.
          std::set<double> distinct;
          for (double v : ds.columns[c].numeric) distinct.insert(v == 0.0 ? 0.0 : v);
          for (double v : distinct) layout.categories.push_back(format_double(v));
        } else if (scheme.kind == SchemeKind::ordinal) {
          const auto& order = scheme.ordinal_orders.at(schema.name);
          std::set<std::string> covered(order.begin(), order.end());
          if (covered.size() != order.size()) {
            throw ConfigError("ordinal order for \"" + schema.name +
                              "\" contains duplicates");
          }
          for (const auto& v : schema.distinct_values) {
            if (!covered.count(v)) {
              throw ConfigError("ordinal order for \"" + schema.name +
                                "\" is missing category \"" + v + "\"");
            }
          }
          if (order.size() != schema.distinct_values.size()) {
            throw ConfigError("ordinal order for \"" + schema.name +
                              "\" lists categories absent from the data");
          }
          layout.categories = order;
        } else {
          layout.categories = schema.distinct_values;
        }
        switch (scheme.kind) {
          case SchemeKind::label:
          case SchemeKind::ordinal:
            layout.width = 1;
            break;
          case SchemeKind::one_hot:
            layout.width = layout.categories.size();
            break;
          case SchemeKind::binary:
            layout.width = detail::binary_width(layout.categories.size());
            break;
        }
      }
      offset += layout.width;
      enc.features_.push_back(std::move(layout));
    }
    enc.encoded_width_ = offset;
    return enc;
  }

  const EncodingScheme& scheme() const { return scheme_; }
  const std::vector<FeatureLayout>& features() const { return features_; }
  std::size_t encoded_width() const { return encoded_width_; }

  std::vector<std::string> column_names() const {
    std::vector<std::string> names(encoded_width_);
    for (const auto& f : features_) {
      if (f.passthrough || scheme_.kind == SchemeKind::label ||
          scheme_.kind == SchemeKind::ordinal) {
        names[f.offset] = f.name;
      } else if (scheme_.kind == SchemeKind::one_hot) {
        for (std::size_t i = 0; i < f.width; ++i) {
          names[f.offset + i] = f.name + "=" + f.categories[i];
        }
      } else {
        for (std::size_t i = 0; i < f.width; ++i) {
          names[f.offset + i] = f.name + "#bit" + std::to_string(i);
        }
      }
    }
    return names;
  }

  ProvenanceMap provenance() const {
    ProvenanceMap map;
    map.entries.resize(encoded_width_);
    for (const auto& f : features_) {
      for (std::size_t i = 0; i < f.width; ++i) {
        ProvenanceEntry& e = map.entries[f.offset + i];
        e.encoded_column = f.offset + i;
        e.source_feature = f.name;
        if (!f.passthrough && scheme_.kind == SchemeKind::one_hot) {
          e.source_value = f.categories[i];
        }
        if (!f.passthrough && scheme_.kind == SchemeKind::binary) {
          e.bit_position = static_cast<int>(i);
        }
      }
    }
    return map;
  }

  EncodedMatrix transform(const Dataset& ds) const {
    if (ds.schema.size() != features_.size()) {
      throw DataError("transform: dataset has " + std::to_string(ds.schema.size()) +
                      " columns, encoder was fit on " +
                      std::to_string(features_.size()));
    }
    for (std::size_t c = 0; c < features_.size(); ++c) {
      if (ds.schema[c].name != features_[c].name ||
          ds.schema[c].kind != features_[c].source_kind) {
        throw DataError("transform: schema mismatch at column \"" +
                        ds.schema[c].name + "\"");
      }
    }

    EncodedMatrix out;
    out.scheme = scheme_;
    out.column_names = column_names();
    out.provenance = provenance();
    out.values = Matrix(ds.row_count, encoded_width_);

    for (std::size_t c = 0; c < features_.size(); ++c) {
      const FeatureLayout& f = features_[c];
      if (f.passthrough) {
        for (std::size_t r = 0; r < ds.row_count; ++r) {
          out.values.at(r, f.offset) = ds.columns[c].numeric[r];
        }
        continue;
      }
      // Per-row category code against the frozen table.
      std::map<std::string, std::size_t> code_of;
      for (std::size_t i = 0; i < f.categories.size(); ++i) {
        code_of[f.categories[i]] = i;
      }
      for (std::size_t r = 0; r < ds.row_count; ++r) {
        std::string raw;
        if (f.source_kind == ColumnKind::numeric) {
          double v = ds.columns[c].numeric[r];
          raw = format_double(v == 0.0 ? 0.0 : v);
        } else {
          raw = ds.schema[c].distinct_values[ds.columns[c].codes[r]];
        }
        auto it = code_of.find(raw);
        if (it == code_of.end()) {
          throw DataError("transform: unseen category \"" + raw +
                          "\" in feature \"" + f.name + "\"");
        }
        std::size_t code = it->second;
        switch (scheme_.kind) {
          case SchemeKind::label:
            out.values.at(r, f.offset) = static_cast<double>(code);
            break;
          case SchemeKind::ordinal:
            out.values.at(r, f.offset) = static_cast<double>(code + 1);
            break;
          case SchemeKind::one_hot:
            out.values.at(r, f.offset + code) = 1.0;
            break;
          case SchemeKind::binary:
            for (std::size_t b = 0; b < f.width; ++b) {
              out.values.at(r, f.offset + b) =
                  static_cast<double>((code >> b) & 1u);
            }
            break;
        }
      }
    }
    return out;
  }

  /// Recovers the original cell strings of one encoded row, one entry per
  /// source feature. Passthrough cells come back as round-trip decimals.
  std::vector<std::string> decode_row(std::span<const double> row) const {
    if (row.size() != encoded_width_) {
      throw DataError("decode_row: row width " + std::to_string(row.size()) +
                      " != encoded width " + std::to_string(encoded_width_));
    }
    std::vector<std::string> out;
    out.reserve(features_.size());
    for (const auto& f : features_) {
      if (f.passthrough) {
        out.push_back(format_double(row[f.offset]));
        continue;
      }
      std::size_t code = 0;
      switch (scheme_.kind) {
        case SchemeKind::label:
          code = static_cast<std::size_t>(std::llround(row[f.offset]));
          break;
        case SchemeKind::ordinal:
          code = static_cast<std::size_t>(std::llround(row[f.offset])) - 1;
          break;
        case SchemeKind::one_hot: {
          std::size_t ones = 0;
          for (std::size_t i = 0; i < f.width; ++i) {
            if (row[f.offset + i] == 1.0) {
              code = i;
              ++ones;
            }
          }
          if (ones != 1) {
            throw DataError("decode_row: one-hot group of \"" + f.name +
                            "\" does not contain exactly one 1");
          }
          break;
        }
        case SchemeKind::binary:
          for (std::size_t b = 0; b < f.width; ++b) {
            if (row[f.offset + b] == 1.0) code |= (std::size_t{1} << b);
          }
          break;
      }
      if (code >= f.categories.size()) {
        throw DataError("decode_row: code out of range for feature \"" + f.name +
                        "\"");
      }
      out.push_back(f.categories[code]);
    }
    return out;
  }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["version"] = 1;
    j["scheme"]["kind"] = scheme_name(scheme_.kind);
    j["scheme"]["treat_numeric_as_categorical"] = scheme_.treat_numeric_as_categorical;
    j["scheme"]["ordinal_orders"] = scheme_.ordinal_orders;
    j["features"] = nlohmann::json::array();
    for (const auto& f : features_) {
      nlohmann::json jf;
      jf["name"] = f.name;
      jf["source_kind"] = f.source_kind == ColumnKind::numeric ? "numeric" : "categorical";
      jf["passthrough"] = f.passthrough;
      jf["categories"] = f.categories;
      jf["width"] = f.width;
      jf["offset"] = f.offset;
      j["features"].push_back(jf);
    }
    return j;
  }

  static Encoder from_json(const nlohmann::json& j) {
    if (!j.contains("version") || j.at("version").get<int>() != 1) {
      throw DataError("encoder file: unsupported version");
    }
    Encoder enc;
    enc.scheme_.kind = scheme_from_name(j.at("scheme").at("kind").get<std::string>());
    enc.scheme_.treat_numeric_as_categorical =
        j.at("scheme").at("treat_numeric_as_categorical").get<bool>();
    enc.scheme_.ordinal_orders =
        j.at("scheme").at("ordinal_orders")
            .get<std::map<std::string, std::vector<std::string>>>();
    std::size_t offset = 0;
    for (const auto& jf : j.at("features")) {
      FeatureLayout f;
      f.name = jf.at("name").get<std::string>();
      f.source_kind = jf.at("source_kind").get<std::string>() == "numeric"
                          ? ColumnKind::numeric
                          : ColumnKind::categorical;
      f.passthrough = jf.at("passthrough").get<bool>();
      f.categories = jf.at("categories").get<std::vector<std::string>>();
      f.width = jf.at("width").get<std::size_t>();
      f.offset = jf.at("offset").get<std::size_t>();
      if (f.offset != offset) throw DataError("encoder file: inconsistent layout");
      offset += f.width;
      enc.features_.push_back(std::move(f));
    }
    enc.encoded_width_ = offset;
    return enc;
  }

 private:
  EncodingScheme scheme_;
  std::vector<FeatureLayout> features_;
  std::size_t encoded_width_ = 0;
};

inline Encoder fit_encoder(const Dataset& ds, const EncodingScheme& scheme) {
  return Encoder::fit(ds, scheme);
}

inline EncodedMatrix transform(const Encoder& enc, const Dataset& ds) {
  return enc.transform(ds);
}

inline void save_encoder(const Encoder& enc, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write file: " + path);
  out << enc.to_json().dump(2) << "\n";
}

inline Encoder load_encoder(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw DataError("encoder file: parse error: " + std::string(e.what()));
  }
  return Encoder::from_json(j);
}

}  // namespace treeglass

#endif  // TREEGLASS_ENCODERS_HPP
