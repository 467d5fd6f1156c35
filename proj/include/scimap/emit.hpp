#pragma once

// Writers for Pajek (.vec, .clu, .net, .paj), VOSviewer map files and a
// static SVG rendering of an overlay. Output is byte-stable: LF line
// endings, locale-independent fixed-precision numbers.

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "scimap/core.hpp"
#include "scimap/overlay.hpp"
#include "scimap/text.hpp"

namespace scimap {

inline constexpr int kVecDigits = 6;
inline constexpr int kCoordDigits = 4;
inline constexpr int kEdgeDigits = 4;

// ---------------------------------------------------------------------------
// Pajek

struct PajekEdge {
  int from = 0;
  int to = 0;
  double value = 0.0;
  friend bool operator==(const PajekEdge&, const PajekEdge&) = default;
};

/// Network as stored in a .net file; coordinates are already in (0,1)^2.
struct PajekNetwork {
  std::vector<std::string> labels;
  std::vector<Point2> coords;
  std::vector<PajekEdge> edges;
};

struct NamedPartition {
  std::string name;
  std::vector<int> groups;
};

struct NamedVector {
  std::string name;
  std::vector<double> values;
};

struct PajekProject {
  std::string network_name;
  PajekNetwork network;
  std::vector<NamedPartition> partitions;
  std::vector<NamedVector> vectors;
};

inline std::string pajek_quote(std::string_view label) {
  std::string out = "\"";
  for (char c : label) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out.push_back('"');
  return out;
}

inline std::string write_pajek_vec(std::span<const double> values) {
  std::string out = "*Vertices " + std::to_string(values.size()) + "\n";
  for (double v : values) out += text::fixed(v, kVecDigits) + "\n";
  return out;
}

inline std::string write_pajek_vec(const OverlayVector& ov) { return write_pajek_vec(ov.proportions()); }

inline std::string write_pajek_clu(std::span<const int> groups) {
  std::string out = "*Vertices " + std::to_string(groups.size()) + "\n";
  for (int g : groups) out += std::to_string(g) + "\n";
  return out;
}

inline std::string write_pajek_clu(const Partition& p) { return write_pajek_clu(p.assignment()); }

inline std::string write_pajek_net(const PajekNetwork& net) {
  std::string out = "*Vertices " + std::to_string(net.labels.size()) + "\n";
  for (std::size_t i = 0; i < net.labels.size(); ++i) {
    out += std::to_string(i + 1) + " " + pajek_quote(net.labels[i]) + " " + text::fixed(net.coords[i].x, kCoordDigits) +
           " " + text::fixed(net.coords[i].y, kCoordDigits) + " 0.5\n";
  }
  out += "*Edges\n";
  for (const auto& e : net.edges)
    out += std::to_string(e.from) + " " + std::to_string(e.to) + " " + text::fixed(e.value, kEdgeDigits) + "\n";
  return out;
}

/// Maps coordinates into [0.05, 0.95]^2 with one scale for both axes,
/// centered; Pajek's y axis points down, so y is flipped.
inline std::vector<Point2> unit_square_coords(const std::vector<Point2>& coords) {
  if (coords.empty()) return {};
  double x0 = coords[0].x, x1 = x0, y0 = coords[0].y, y1 = y0;
  for (const auto& p : coords) {
    x0 = std::min(x0, p.x);
    x1 = std::max(x1, p.x);
    y0 = std::min(y0, p.y);
    y1 = std::max(y1, p.y);
  }
  const double range = std::max(x1 - x0, y1 - y0);
  const double scale = range > 0.0 ? 0.9 / range : 0.0;
  const double cx = 0.5 * (x0 + x1), cy = 0.5 * (y0 + y1);
  std::vector<Point2> out;
  out.reserve(coords.size());
  for (const auto& p : coords) out.push_back({0.5 + (p.x - cx) * scale, 0.5 - (p.y - cy) * scale});
  return out;
}

inline PajekNetwork to_pajek_network(const BaseMap& base) {
  PajekNetwork net;
  net.labels = base.registry->labels();
  net.coords = unit_square_coords(base.coords);
  for (const auto& e : base.edges) net.edges.push_back({e.from.value, e.to.value, e.similarity});
  return net;
}

inline std::string write_pajek_net(const BaseMap& base) { return write_pajek_net(to_pajek_network(base)); }

inline std::string write_paj_project(const PajekProject& project) {
  std::string out = "*Network " + project.network_name + "\n" + write_pajek_net(project.network);
  for (const auto& p : project.partitions) out += "\n*Partition " + p.name + "\n" + write_pajek_clu(p.groups);
  for (const auto& v : project.vectors) out += "\n*Vector " + v.name + "\n" + write_pajek_vec(v.values);
  return out;
}

inline PajekProject to_pajek_project(const BaseMap& base, const OverlayVector* overlay = nullptr) {
  PajekProject project;
  project.network_name = "basemap";
  project.network = to_pajek_network(base);
  project.partitions = {{"partition19", base.partition19.assignment()},
                        {"partition6", base.partition6.assignment()},
                        {"partition4", base.partition4.assignment()}};
  if (overlay) project.vectors.push_back({"overlay", overlay->proportions()});
  return project;
}

inline std::string write_paj_project(const BaseMap& base, const OverlayVector* overlay = nullptr) {
  return write_paj_project(to_pajek_project(base, overlay));
}

// ---------------------------------------------------------------------------
// VOSviewer

struct VosMapRow {
  int id = 0;
  std::string label;
  double x = 0.0;
  double y = 0.0;
  int cluster = 0;
  double weight = 0.0;
};

inline constexpr std::string_view kVosHeader = "id,label,x,y,cluster,weight";

inline std::string write_vosviewer_map(std::span<const VosMapRow> rows) {
  std::string out = std::string(kVosHeader) + "\n";
  for (const auto& r : rows) {
    out += std::to_string(r.id) + "," + text::csv_field(r.label) + "," + text::fixed(r.x, kCoordDigits) + "," +
           text::fixed(r.y, kCoordDigits) + "," + std::to_string(r.cluster) + "," + text::fixed(r.weight, kVecDigits) +
           "\n";
  }
  return out;
}

/// One row per category with a nonzero count (all categories with
/// `include_all`), clustered by the 4-, 6- or 19-group partition.
inline std::vector<VosMapRow> vosviewer_rows(const BaseMap& base, const OverlayVector& ov, int partition_choice,
                                             bool include_all = false) {
  if (!base.registry || !ov.registry() || !(*base.registry == *ov.registry()))
    throw Error(Errc::RegistryMismatch, "overlay was built against a different registry");
  const Partition& partition = base.partition(partition_choice);
  std::vector<VosMapRow> rows;
  for (std::size_t i = 0; i < base.size(); ++i) {
    if (!include_all && ov.counts()[i] == 0) continue;
    rows.push_back({static_cast<int>(i + 1), base.registry->labels()[i], base.coords[i].x, base.coords[i].y,
                    partition.group(i), ov.proportions()[i]});
  }
  return rows;
}

inline std::string write_vosviewer_map(const BaseMap& base, const OverlayVector& ov, int partition_choice,
                                       bool include_all = false) {
  return write_vosviewer_map(vosviewer_rows(base, ov, partition_choice, include_all));
}

// ---------------------------------------------------------------------------
// SVG

inline constexpr std::array<std::string_view, 19> kPalette = {
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2",
    "#7f7f7f", "#bcbd22", "#17becf", "#393b79", "#637939", "#8c6d31", "#843c39",
    "#7b4173", "#3182bd", "#e6550d", "#31a354", "#756bb1"};

inline std::string_view group_color(int group) {
  return kPalette[static_cast<std::size_t>(group - 1) % kPalette.size()];
}

struct SvgOptions {
  int partition_choice = 19;
  std::size_t label_count = 10;
  bool legend = true;
  double width = 800.0;
  double height = 600.0;
};

inline std::string xml_escape(std::string_view s) {
  std::string out;
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

/// Circles for visible nodes (largest drawn first), colored by group, with
/// labels on the `label_count` largest proportions and an optional legend.
/// `legend_names` overrides the partition's own group names; missing names
/// print as "Group k".
inline std::string render_svg(const OverlayMap& om, const SvgOptions& options = {},
                              const std::vector<std::string>& legend_names = {}) {
  const BaseMap& base = om.base;
  const Partition& partition = base.partition(options.partition_choice);
  const auto& names = legend_names.empty() ? partition.group_names() : legend_names;
  const double legend_width = options.legend ? 180.0 : 0.0;
  const double margin = 50.0;
  const double plot_w = options.width - legend_width - 2 * margin;
  const double plot_h = options.height - 2 * margin;

  // Frame on all base coordinates so overlays of one map line up.
  double x0 = 0, x1 = 0, y0 = 0, y1 = 0;
  if (!base.coords.empty()) {
    x0 = x1 = base.coords[0].x;
    y0 = y1 = base.coords[0].y;
  }
  for (const auto& p : base.coords) {
    x0 = std::min(x0, p.x);
    x1 = std::max(x1, p.x);
    y0 = std::min(y0, p.y);
    y1 = std::max(y1, p.y);
  }
  const double sx = x1 > x0 ? plot_w / (x1 - x0) : 0.0;
  const double sy = y1 > y0 ? plot_h / (y1 - y0) : 0.0;
  const double scale = sx > 0 && sy > 0 ? std::min(sx, sy) : std::max(sx, sy);
  const double cx = 0.5 * (x0 + x1), cy = 0.5 * (y0 + y1);
  auto px = [&](const Point2& p) { return margin + plot_w / 2 + (p.x - cx) * scale; };
  auto py = [&](const Point2& p) { return margin + plot_h / 2 - (p.y - cy) * scale; };
  auto num = [](double v) { return text::fixed(v, 2); };

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(options.width) + "\" height=\"" +
         num(options.height) + "\" viewBox=\"0 0 " + num(options.width) + " " + num(options.height) + "\">\n";
  out += "<rect x=\"0\" y=\"0\" width=\"" + num(options.width) + "\" height=\"" + num(options.height) +
         "\" fill=\"#ffffff\"/>\n";

  std::vector<std::size_t> visible;
  for (std::size_t i = 0; i < om.sizes.size(); ++i)
    if (om.visible(i)) visible.push_back(i);
  std::stable_sort(visible.begin(), visible.end(), [&](std::size_t a, std::size_t b) { return om.sizes[a] > om.sizes[b]; });

  out += "<g id=\"nodes\">\n";
  for (auto i : visible) {
    const auto& label = base.registry->labels()[i];
    out += "<circle cx=\"" + num(px(base.coords[i])) + "\" cy=\"" + num(py(base.coords[i])) + "\" r=\"" +
           num(om.sizes[i]) + "\" fill=\"" + std::string(group_color(partition.group(i))) +
           "\" fill-opacity=\"0.75\" stroke=\"#333333\" stroke-width=\"0.5\"><title>" + xml_escape(label) +
           "</title></circle>\n";
  }
  out += "</g>\n";

  const auto& p = om.overlay.proportions();
  std::vector<std::size_t> ranked = visible;
  std::stable_sort(ranked.begin(), ranked.end(), [&](std::size_t a, std::size_t b) {
    return p[a] != p[b] ? p[a] > p[b] : a < b;
  });
  if (ranked.size() > options.label_count) ranked.resize(options.label_count);
  out += "<g id=\"labels\" font-family=\"sans-serif\" font-size=\"10\" fill=\"#000000\">\n";
  for (auto i : ranked) {
    out += "<text x=\"" + num(px(base.coords[i]) + om.sizes[i] + 2.0) + "\" y=\"" + num(py(base.coords[i]) + 3.0) +
           "\">" + xml_escape(base.registry->labels()[i]) + "</text>\n";
  }
  out += "</g>\n";

  if (options.legend) {
    const double lx = options.width - legend_width + 10.0;
    out += "<g id=\"legend\" font-family=\"sans-serif\" font-size=\"10\" fill=\"#000000\">\n";
    for (int g = 1; g <= partition.k(); ++g) {
      const double ly = margin + 14.0 * (g - 1);
      const auto name = static_cast<std::size_t>(g) <= names.size() ? names[static_cast<std::size_t>(g - 1)]
                                                                     : "Group " + std::to_string(g);
      out += "<rect x=\"" + num(lx) + "\" y=\"" + num(ly) + "\" width=\"10.00\" height=\"10.00\" fill=\"" +
             std::string(group_color(g)) + "\"/><text x=\"" + num(lx + 14.0) + "\" y=\"" + num(ly + 9.0) + "\">" +
             xml_escape(name) + "</text>\n";
    }
    out += "</g>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace scimap
