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

#ifndef TREEGLASS_REPORT_HPP
#define TREEGLASS_REPORT_HPP

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "treeglass/aggregate.hpp"
#include "treeglass/core.hpp"

namespace treeglass {

enum class PlotKind { global_bar, stacked_horizontal, stacked_vertical, local_waterfall };

inline std::string plot_kind_name(PlotKind k) {
  switch (k) {
    case PlotKind::global_bar: return "global_bar";
    case PlotKind::stacked_horizontal: return "stacked_horizontal";
    case PlotKind::stacked_vertical: return "stacked_vertical";
    case PlotKind::local_waterfall: return "local_waterfall";
  }
  throw ConfigError("invalid plot kind");
}

/// Machine-readable plot content; the SVG renderer consumes nothing else.
struct PlotData {
  PlotKind kind = PlotKind::global_bar;
  std::vector<std::string> labels;
  std::map<std::string, std::vector<double>> series;
  std::map<std::string, std::string> meta_text;
  std::map<std::string, double> meta_number;
};

enum class Orientation { horizontal, vertical };

inline PlotData build_global_plot(const GlobalImportance& gi, std::size_t top_k) {
  if (top_k < 1) throw ConfigError("build_global_plot: top_k must be at least 1");
  if (gi.entries.empty()) throw DataError("build_global_plot: empty importance");
  PlotData pd;
  pd.kind = PlotKind::global_bar;
  pd.meta_text["title"] = "Global importance (mean |SHAP|)";
  std::vector<double>& values = pd.series["importance"];
  for (std::size_t i = 0; i < gi.entries.size() && i < top_k; ++i) {
    pd.labels.push_back(gi.entries[i].first);
    values.push_back(gi.entries[i].second);
  }
  if (gi.entries.size() > top_k) {
    double rest = 0.0;
    for (std::size_t i = top_k; i < gi.entries.size(); ++i) rest += gi.entries[i].second;
    pd.labels.push_back("(other)");
    values.push_back(rest);
  }
  return pd;
}

inline PlotData build_stacked_plot(const GroupedImportance& g, Orientation orientation) {
  if (g.per_value.empty()) throw DataError("build_stacked_plot: empty group");
  PlotData pd;
  pd.kind = orientation == Orientation::horizontal ? PlotKind::stacked_horizontal
                                                   : PlotKind::stacked_vertical;
  pd.meta_text["title"] = "Per-value importance of " + g.feature;
  pd.meta_text["feature"] = g.feature;
  pd.meta_number["total"] = g.total;
  std::vector<double>& values = pd.series["importance"];
  for (const auto& [value, score] : g.per_value) {
    pd.labels.push_back(value);
    values.push_back(score);
  }
  return pd;
}

/// Waterfall over the top contributions; everything past max_steps folds into
/// one residual step so the cumulative endpoint is preserved.
inline PlotData build_waterfall(const std::vector<BreakdownEntry>& breakdown,
                                double base_value, double output,
                                std::size_t max_steps) {
  if (max_steps < 1) throw ConfigError("build_waterfall: max_steps must be at least 1");
  if (breakdown.empty()) throw DataError("build_waterfall: empty breakdown");
  PlotData pd;
  pd.kind = PlotKind::local_waterfall;
  pd.meta_text["title"] = "Local explanation";
  pd.meta_number["base_value"] = base_value;
  pd.meta_number["output"] = output;
  std::vector<double>& values = pd.series["phi"];
  for (std::size_t i = 0; i < breakdown.size() && i < max_steps; ++i) {
    pd.labels.push_back(breakdown[i].name + " = " + breakdown[i].value_shown);
    values.push_back(breakdown[i].phi);
  }
  if (breakdown.size() > max_steps) {
    double rest = 0.0;
    for (std::size_t i = max_steps; i < breakdown.size(); ++i) rest += breakdown[i].phi;
    pd.labels.push_back("(other)");
    values.push_back(rest);
  }
  return pd;
}

namespace detail {

inline std::string xml_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

inline const std::vector<std::string>& palette() {
  static const std::vector<std::string> colors = {
      "#4c78a8", "#f58518", "#54a24b", "#e45756", "#72b7b2",
      "#eeca3b", "#b279a2", "#ff9da6", "#9d755d", "#bab0ac"};
  return colors;
}

class SvgWriter {
 public:
  SvgWriter() {
    buf_ = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
           "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"960\" "
           "height=\"540\" viewBox=\"0 0 960 540\" font-family=\"sans-serif\">\n";
    rect(0, 0, 960, 540, "#ffffff");
  }

  void rect(double x, double y, double w, double h, const std::string& fill) {
    buf_ += "<rect x=\"" + format_coord(x) + "\" y=\"" + format_coord(y) +
            "\" width=\"" + format_coord(w) + "\" height=\"" + format_coord(h) +
            "\" fill=\"" + fill + "\"/>\n";
  }

  void line(double x1, double y1, double x2, double y2, const std::string& stroke,
            bool dashed = false) {
    buf_ += "<line x1=\"" + format_coord(x1) + "\" y1=\"" + format_coord(y1) +
            "\" x2=\"" + format_coord(x2) + "\" y2=\"" + format_coord(y2) +
            "\" stroke=\"" + stroke + "\"";
    if (dashed) buf_ += " stroke-dasharray=\"4 3\"";
    buf_ += "/>\n";
  }

  void text(double x, double y, const std::string& content, int size,
            const std::string& anchor = "start", const std::string& fill = "#000000") {
    buf_ += "<text x=\"" + format_coord(x) + "\" y=\"" + format_coord(y) +
            "\" font-size=\"" + std::to_string(size) + "\" text-anchor=\"" + anchor +
            "\" fill=\"" + fill + "\">" + xml_escape(content) + "</text>\n";
  }

  std::string finish() {
    buf_ += "</svg>\n";
    return std::move(buf_);
  }

 private:
  std::string buf_;
};

inline void render_bar_list(SvgWriter& svg, const PlotData& pd,
                            const std::vector<double>& values) {
  const double top = 60, bottom = 520, left = 300, right = 920;
  const auto n = values.size();
  double slot = (bottom - top) / static_cast<double>(n);
  double bar_h = std::min(28.0, 0.7 * slot);
  double maxv = *std::max_element(values.begin(), values.end());
  if (maxv <= 0.0) maxv = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    double y = top + slot * static_cast<double>(i) + (slot - bar_h) / 2.0;
    double w = values[i] / maxv * (right - left - 80);
    svg.text(left - 10, y + bar_h * 0.75, pd.labels[i], 13, "end");
    svg.rect(left, y, w, bar_h, palette()[i % palette().size()]);
    svg.text(left + w + 8, y + bar_h * 0.75, format_sig4(values[i]), 12);
  }
}

inline void render_stacked(SvgWriter& svg, const PlotData& pd,
                           const std::vector<double>& values, bool horizontal) {
  double total = 0.0;
  for (double v : values) total += v;
  if (total <= 0.0) total = 1.0;
  if (horizontal) {
    const double x0 = 40, x1 = 920, y0 = 80, h = 70;
    double x = x0;
    for (std::size_t i = 0; i < values.size(); ++i) {
      double w = values[i] / total * (x1 - x0);
      svg.rect(x, y0, w, h, palette()[i % palette().size()]);
      x += w;
    }
  } else {
    const double y_bottom = 500, y_top = 80, bx = 430, bw = 100;
    double y = y_bottom;
    for (std::size_t i = 0; i < values.size(); ++i) {
      double h = values[i] / total * (y_bottom - y_top);
      y -= h;
      svg.rect(bx, y, bw, h, palette()[i % palette().size()]);
    }
  }
  // legend, 14 entries per column
  double lx = horizontal ? 40 : 560;
  double ly = horizontal ? 200 : 80;
  for (std::size_t i = 0; i < values.size(); ++i) {
    double col = static_cast<double>(i / 14);
    double row = static_cast<double>(i % 14);
    double x = lx + col * 300;
    double y = ly + row * 24;
    svg.rect(x, y - 11, 12, 12, palette()[i % palette().size()]);
    svg.text(x + 20, y, pd.labels[i] + " : " + format_sig4(values[i]), 13);
  }
}

inline void render_waterfall(SvgWriter& svg, const PlotData& pd,
                             const std::vector<double>& values) {
  const double base = pd.meta_number.count("base_value")
                          ? pd.meta_number.at("base_value")
                          : 0.0;
  const double output = pd.meta_number.count("output") ? pd.meta_number.at("output")
                                                       : base;
  const double top = 70, bottom = 500, left = 300, right = 900;
  const auto n = values.size();
  double slot = (bottom - top) / static_cast<double>(n);
  double bar_h = std::min(24.0, 0.7 * slot);

  std::vector<double> cums(n + 1);
  cums[0] = base;
  for (std::size_t i = 0; i < n; ++i) cums[i + 1] = cums[i] + values[i];
  double lo = std::min(base, output), hi = std::max(base, output);
  for (double c : cums) {
    lo = std::min(lo, c);
    hi = std::max(hi, c);
  }
  if (hi == lo) hi = lo + 1.0;
  double pad = 0.05 * (hi - lo);
  lo -= pad;
  hi += pad;
  auto sx = [&](double v) { return left + (v - lo) / (hi - lo) * (right - left); };

  svg.line(sx(base), top - 14, sx(base), bottom + 14, "#888888", true);
  for (std::size_t i = 0; i < n; ++i) {
    double y = top + slot * static_cast<double>(i) + (slot - bar_h) / 2.0;
    double a = sx(cums[i]);
    double b = sx(cums[i + 1]);
    bool positive = values[i] >= 0.0;
    svg.text(left - 10, y + bar_h * 0.75, pd.labels[i], 13, "end");
    svg.rect(std::min(a, b), y, std::max(std::fabs(b - a), 0.5), bar_h,
             positive ? "#e45756" : "#4c78a8");
    svg.text(std::max(a, b) + 6, y + bar_h * 0.75, format_sig4(values[i]), 12);
    if (i + 1 < n) {
      double y_next = top + slot * static_cast<double>(i + 1) + (slot - bar_h) / 2.0;
      svg.line(b, y + bar_h, b, y_next, "#bbbbbb");
    }
  }
  svg.text(left, 532, "base = " + format_sig4(base), 13);
  svg.text(right, 532, "output = " + format_sig4(output), 13, "end");
}

}  // namespace detail

/// Standalone deterministic SVG 1.1: fixed 960x540 viewport, fixed fonts and
/// palette, no timestamps; numeric labels carry 4 significant digits.
inline void render_svg(const PlotData& pd, const std::string& path) {
  if (pd.labels.empty() || pd.series.empty()) {
    throw DataError("render_svg: empty plot data");
  }
  for (const auto& [name, values] : pd.series) {
    if (values.size() != pd.labels.size()) {
      throw DataError("render_svg: series \"" + name + "\" length " +
                      std::to_string(values.size()) + " != label count " +
                      std::to_string(pd.labels.size()));
    }
    if (values.empty()) throw DataError("render_svg: empty series \"" + name + "\"");
  }
  const std::vector<double>& values = pd.series.begin()->second;

  detail::SvgWriter svg;
  std::string title = pd.meta_text.count("title") ? pd.meta_text.at("title")
                                                  : plot_kind_name(pd.kind);
  svg.text(480, 32, title, 18, "middle");
  switch (pd.kind) {
    case PlotKind::global_bar:
      detail::render_bar_list(svg, pd, values);
      break;
    case PlotKind::stacked_horizontal:
      detail::render_stacked(svg, pd, values, true);
      break;
    case PlotKind::stacked_vertical:
      detail::render_stacked(svg, pd, values, false);
      break;
    case PlotKind::local_waterfall:
      detail::render_waterfall(svg, pd, values);
      break;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write file: " + path);
  out << svg.finish();
  if (!out) throw IoError("write failed: " + path);
}

inline nlohmann::json plot_to_json(const PlotData& pd) {
  nlohmann::json j;
  j["kind"] = plot_kind_name(pd.kind);
  j["labels"] = pd.labels;
  j["series"] = nlohmann::json::object();
  for (const auto& [name, values] : pd.series) j["series"][name] = values;
  j["meta"] = nlohmann::json::object();
  for (const auto& [key, value] : pd.meta_text) j["meta"][key] = value;
  for (const auto& [key, value] : pd.meta_number) j["meta"][key] = value;
  return j;
}

inline void write_plot_json(const PlotData& pd, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write file: " + path);
  out << plot_to_json(pd).dump(2) << "\n";
}

}  // namespace treeglass

#endif  // TREEGLASS_REPORT_HPP
