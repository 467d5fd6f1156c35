#pragma once

// A base map persisted as a directory:
//
//   registry.txt      one label per line, id = line number
//   coords.csv        id,label,x,y,weight
//   partition19.csv   label,group[,group_name]   (also partition6, partition4)
//   edges.csv         i,j,s
//   similarity.csv    full similarity matrix with label row and column
//
// Numbers are written with shortest round-trip formatting, so loading a
// saved map reproduces it exactly.

#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "scimap/core.hpp"
#include "scimap/ingest.hpp"
#include "scimap/text.hpp"

namespace scimap {

namespace fs = std::filesystem;

inline std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::Io, "cannot read '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_file(const fs::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::Io, "cannot write '" + path.string() + "'");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error(Errc::Io, "failed writing '" + path.string() + "'");
}

/// File name -> content for every file of the persisted map.
inline std::map<std::string, std::string> base_map_files(const BaseMap& base) {
  const auto& reg = *base.registry;
  std::map<std::string, std::string> files;
  files["registry.txt"] = write_registry(reg);

  std::string coords = "id,label,x,y,weight\n";
  for (std::size_t i = 0; i < base.size(); ++i)
    coords += std::to_string(i + 1) + "," + text::csv_field(reg.labels()[i]) + "," + text::roundtrip(base.coords[i].x) +
              "," + text::roundtrip(base.coords[i].y) + "," + text::roundtrip(base.weights[i]) + "\n";
  files["coords.csv"] = std::move(coords);

  files["partition19.csv"] = write_partition_csv(base.partition19, reg);
  files["partition6.csv"] = write_partition_csv(base.partition6, reg);
  files["partition4.csv"] = write_partition_csv(base.partition4, reg);

  std::string edges = "i,j,s\n";
  for (const auto& e : base.edges)
    edges += std::to_string(e.from.value) + "," + std::to_string(e.to.value) + "," + text::roundtrip(e.similarity) + "\n";
  files["edges.csv"] = std::move(edges);

  files["similarity.csv"] = write_citation_matrix(CitationMatrix(base.similarity.cells()), reg);
  return files;
}

inline BaseMap load_base_map(const fs::path& dir) {
  BaseMap base;
  {
    std::istringstream in(read_file(dir / "registry.txt"));
    base.registry = std::make_shared<const CategoryRegistry>(read_registry(in));
  }
  const auto& reg = *base.registry;
  const std::size_t n = reg.size();

  {
    std::istringstream in(read_file(dir / "coords.csv"));
    auto lines = text::read_lines(in);
    if (lines.empty() || lines[0] != "id,label,x,y,weight")
      throw Error(Errc::ParseError, "coords.csv: expected header 'id,label,x,y,weight'", 1);
    base.coords.assign(n, Point2{});
    base.weights.assign(n, 0.0);
    std::vector<bool> seen(n, false);
    for (std::size_t r = 1; r < lines.size(); ++r) {
      if (text::trim(lines[r]).empty()) continue;
      auto f = text::split_csv(lines[r], ',', r + 1);
      auto id = f.size() == 5 ? text::parse_int(f[0]) : std::nullopt;
      auto x = f.size() == 5 ? text::parse_double(f[2]) : std::nullopt;
      auto y = f.size() == 5 ? text::parse_double(f[3]) : std::nullopt;
      auto w = f.size() == 5 ? text::parse_double(f[4]) : std::nullopt;
      if (!id || !x || !y || !w || *id < 1 || static_cast<std::size_t>(*id) > n)
        throw Error(Errc::ParseError, "coords.csv: malformed row", r + 1);
      const auto i = static_cast<std::size_t>(*id - 1);
      base.coords[i] = {*x, *y};
      base.weights[i] = *w;
      seen[i] = true;
    }
    for (std::size_t i = 0; i < n; ++i)
      if (!seen[i]) throw Error(Errc::ParseError, "coords.csv: no row for id " + std::to_string(i + 1));
  }

  auto partition = [&](const char* name) {
    std::istringstream in(read_file(dir / name));
    return read_partition_csv(in, reg);
  };
  base.partition19 = partition("partition19.csv");
  base.partition6 = partition("partition6.csv");
  base.partition4 = partition("partition4.csv");

  {
    std::istringstream in(read_file(dir / "edges.csv"));
    auto lines = text::read_lines(in);
    if (lines.empty() || lines[0] != "i,j,s") throw Error(Errc::ParseError, "edges.csv: expected header 'i,j,s'", 1);
    for (std::size_t r = 1; r < lines.size(); ++r) {
      if (text::trim(lines[r]).empty()) continue;
      auto f = text::split(lines[r], ',');
      auto i = f.size() == 3 ? text::parse_int(f[0]) : std::nullopt;
      auto j = f.size() == 3 ? text::parse_int(f[1]) : std::nullopt;
      auto s = f.size() == 3 ? text::parse_double(f[2]) : std::nullopt;
      if (!i || !j || !s || *i < 1 || *j < 1 || static_cast<std::size_t>(std::max(*i, *j)) > n)
        throw Error(Errc::ParseError, "edges.csv: malformed row", r + 1);
      base.edges.push_back({CategoryId{static_cast<int>(*i)}, CategoryId{static_cast<int>(*j)}, *s});
    }
  }

  {
    std::istringstream in(read_file(dir / "similarity.csv"));
    base.similarity = SimilarityMatrix(parse_citation_matrix(in, reg).cells());
  }
  return base;
}

}  // namespace scimap
