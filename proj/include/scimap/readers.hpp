#pragma once

// Readers for the formats written by emit.hpp.

#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "scimap/emit.hpp"
#include "scimap/text.hpp"

namespace scimap {

namespace detail {

struct LineCursor {
  std::vector<std::string> lines;
  std::size_t pos = 0;

  explicit LineCursor(std::string_view content) {
    std::istringstream in{std::string(content)};
    lines = text::read_lines(in);
  }
  bool done() const { return pos >= lines.size(); }
  std::size_t line_no() const { return pos + 1; }
  const std::string& peek() const { return lines.at(pos); }
  const std::string& next() {
    if (done()) throw Error(Errc::ParseError, "unexpected end of input", pos + 1);
    return lines[pos++];
  }
  void skip_blank() {
    while (!done() && text::trim(lines[pos]).empty()) ++pos;
  }
};

inline std::size_t read_vertices_header(LineCursor& in) {
  const auto n = in.line_no();
  const std::string_view line = text::trim(in.next());
  constexpr std::string_view tag = "*Vertices";
  if (line.size() <= tag.size() || line.substr(0, tag.size()) != tag)
    throw Error(Errc::ParseError, "expected '*Vertices N'", n);
  auto count = text::parse_int(line.substr(tag.size()));
  if (!count || *count < 0) throw Error(Errc::ParseError, "bad vertex count", n);
  return static_cast<std::size_t>(*count);
}

inline std::vector<double> read_vec_body(LineCursor& in) {
  const auto n = read_vertices_header(in);
  std::vector<double> values;
  values.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto line_no = in.line_no();
    auto v = text::parse_double(in.next());
    if (!v) throw Error(Errc::ParseError, "expected a number", line_no);
    values.push_back(*v);
  }
  return values;
}

inline std::vector<int> read_clu_body(LineCursor& in) {
  const auto n = read_vertices_header(in);
  std::vector<int> groups;
  groups.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto line_no = in.line_no();
    auto v = text::parse_int(in.next());
    if (!v) throw Error(Errc::ParseError, "expected an integer", line_no);
    groups.push_back(static_cast<int>(*v));
  }
  return groups;
}

inline PajekNetwork read_net_body(LineCursor& in) {
  PajekNetwork net;
  const auto n = read_vertices_header(in);
  for (std::size_t i = 0; i < n; ++i) {
    const auto line_no = in.line_no();
    const std::string& line = in.next();
    std::size_t pos = line.find(' ');
    if (pos == std::string::npos || text::parse_int(line.substr(0, pos)) != static_cast<long long>(i + 1))
      throw Error(Errc::ParseError, "expected vertex " + std::to_string(i + 1), line_no);
    if (pos + 1 >= line.size() || line[pos + 1] != '"') throw Error(Errc::ParseError, "expected quoted label", line_no);
    std::string label;
    std::size_t c = pos + 2;
    for (;; ++c) {
      if (c >= line.size()) throw Error(Errc::ParseError, "unterminated label", line_no);
      if (line[c] == '"') {
        if (c + 1 < line.size() && line[c + 1] == '"') {
          label.push_back('"');
          ++c;
        } else {
          break;
        }
      } else {
        label.push_back(line[c]);
      }
    }
    std::istringstream rest(line.substr(c + 1));
    std::string xs, ys, zs;
    rest >> xs >> ys >> zs;
    auto x = text::parse_double(xs), y = text::parse_double(ys);
    if (!x || !y) throw Error(Errc::ParseError, "expected vertex coordinates", line_no);
    net.labels.push_back(std::move(label));
    net.coords.push_back({*x, *y});
  }
  if (text::trim(in.next()) != "*Edges") throw Error(Errc::ParseError, "expected '*Edges'", in.line_no() - 1);
  while (!in.done() && !text::trim(in.peek()).empty() && in.peek().front() != '*') {
    const auto line_no = in.line_no();
    std::istringstream row(in.next());
    std::string a, b, v;
    row >> a >> b >> v;
    auto from = text::parse_int(a), to = text::parse_int(b);
    auto value = text::parse_double(v);
    if (!from || !to || !value) throw Error(Errc::ParseError, "expected 'i j value'", line_no);
    net.edges.push_back({static_cast<int>(*from), static_cast<int>(*to), *value});
  }
  return net;
}

inline std::string section_name(std::string_view line, std::string_view tag) {
  return std::string(text::trim(line.substr(tag.size())));
}

}  // namespace detail

inline std::vector<double> read_pajek_vec(std::string_view content) {
  detail::LineCursor in(content);
  return detail::read_vec_body(in);
}

inline std::vector<int> read_pajek_clu(std::string_view content) {
  detail::LineCursor in(content);
  return detail::read_clu_body(in);
}

inline PajekNetwork read_pajek_net(std::string_view content) {
  detail::LineCursor in(content);
  return detail::read_net_body(in);
}

inline PajekProject read_paj_project(std::string_view content) {
  detail::LineCursor in(content);
  PajekProject project;
  bool have_network = false;
  while (true) {
    in.skip_blank();
    if (in.done()) break;
    const auto line_no = in.line_no();
    const std::string line = in.next();
    if (line.rfind("*Network", 0) == 0) {
      if (have_network) throw Error(Errc::ParseError, "second *Network section", line_no);
      project.network_name = detail::section_name(line, "*Network");
      project.network = detail::read_net_body(in);
      have_network = true;
    } else if (line.rfind("*Partition", 0) == 0) {
      project.partitions.push_back({detail::section_name(line, "*Partition"), detail::read_clu_body(in)});
    } else if (line.rfind("*Vector", 0) == 0) {
      project.vectors.push_back({detail::section_name(line, "*Vector"), detail::read_vec_body(in)});
    } else {
      throw Error(Errc::ParseError, "unknown project section '" + line + "'", line_no);
    }
  }
  if (!have_network) throw Error(Errc::ParseError, "project has no *Network section");
  return project;
}

inline std::vector<VosMapRow> read_vosviewer_map(std::string_view content) {
  detail::LineCursor in(content);
  if (in.done() || in.next() != kVosHeader) throw Error(Errc::ParseError, "expected header '" + std::string(kVosHeader) + "'", 1);
  std::vector<VosMapRow> rows;
  while (!in.done()) {
    const auto line_no = in.line_no();
    const auto& line = in.next();
    if (text::trim(line).empty()) continue;
    const auto f = text::split_csv(line, ',', line_no);
    if (f.size() != 6) throw Error(Errc::ParseError, "expected 6 fields", line_no);
    auto id = text::parse_int(f[0]), cluster = text::parse_int(f[4]);
    auto x = text::parse_double(f[2]), y = text::parse_double(f[3]), w = text::parse_double(f[5]);
    if (!id || !cluster || !x || !y || !w) throw Error(Errc::ParseError, "bad numeric field", line_no);
    rows.push_back({static_cast<int>(*id), f[1], *x, *y, static_cast<int>(*cluster), *w});
  }
  return rows;
}

}  // namespace scimap
