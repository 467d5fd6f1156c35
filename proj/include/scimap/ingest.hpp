#pragma once

// Readers for the WoS "Analyze Results" export, category-citation matrices,
// registry files and partition files, plus the matching writers where a
// format is also produced by the toolkit.

#include <istream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "scimap/core.hpp"
#include "scimap/text.hpp"

namespace scimap {

struct AnalyzeRow {
  std::string raw_label;
  long long count = 0;
  friend bool operator==(const AnalyzeRow&, const AnalyzeRow&) = default;
};

/// Column 1 is the label and column 2 the record count; further columns
/// (percentages, bar charts) are ignored. Title and header lines before the
/// first data row are skipped, as are parenthesized footer notes such as
/// "(12 Field:... value(s) outside display options.)".
inline std::vector<AnalyzeRow> parse_analyze_export(std::istream& in) {
  std::vector<AnalyzeRow> rows;
  const auto lines = text::read_lines(in);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    const std::string_view line = lines[n];
    if (text::trim(line).empty()) continue;
    const auto cols = text::split(line, '\t');
    const auto label = text::trim(cols[0]);
    bool numeric = false;
    long long count = -1;
    if (cols.size() >= 2)
      if (auto v = text::parse_int(cols[1])) {
        numeric = true;
        count = *v;
      }
    if (count >= 0 && !label.empty()) {
      rows.push_back({std::string(label), count});
      continue;
    }
    if (rows.empty() && !numeric) continue;  // title or header
    if (cols.size() == 1 && text::trim(line).front() == '(') continue;  // footer note
    throw Error(Errc::MalformedRow, "expected '<label>\\t<non-negative count>'", n + 1);
  }
  if (rows.empty()) throw Error(Errc::EmptyExport, "analyze export contains no data rows");
  return rows;
}

inline std::vector<AnalyzeRow> parse_analyze_export(const std::string& content) {
  std::istringstream in(content);
  return parse_analyze_export(in);
}

/// Matched counts are summed per category; rows that do not resolve in the
/// registry are kept aside. Proportions use the matched total only.
inline OverlayVector build_overlay(const std::vector<AnalyzeRow>& rows, RegistryPtr registry) {
  std::vector<long long> counts(registry->size(), 0);
  std::vector<UnmatchedRow> unmatched;
  long long matched = 0;
  for (const auto& row : rows) {
    if (auto id = registry->lookup(row.raw_label)) {
      counts[id->index()] += row.count;
      matched += row.count;
    } else {
      unmatched.push_back({row.raw_label, row.count});
    }
  }
  if (matched == 0)
    throw Error(Errc::AllUnmatched,
                "no records matched the category registry (" + std::to_string(unmatched.size()) +
                    " unmatched labels)");
  return OverlayVector(std::move(registry), std::move(counts), std::move(unmatched));
}

inline char detect_delimiter(std::string_view header) {
  auto tab = header.find('\t');
  auto comma = header.find(',');
  if (tab == std::string_view::npos && comma == std::string_view::npos)
    throw Error(Errc::ParseError, "header has neither tab nor comma delimiter", 1);
  return tab < comma ? '\t' : ',';
}

/// Square matrix with a label row and a label column, in any order; cells
/// are re-ordered to registry id order.
inline CitationMatrix parse_citation_matrix(std::istream& in, const CategoryRegistry& registry) {
  auto lines = text::read_lines(in);
  while (!lines.empty() && text::trim(lines.back()).empty()) lines.pop_back();
  if (lines.empty()) throw Error(Errc::ParseError, "matrix file is empty");
  const char delim = detect_delimiter(lines[0]);

  auto resolve = [&](const std::string& label, std::size_t line_no, std::vector<bool>& seen) {
    auto id = registry.lookup(label);
    if (!id) throw Error(Errc::UnknownLabel, "matrix label '" + label + "' is not in the registry", line_no);
    if (seen[id->index()]) throw Error(Errc::ParseError, "label '" + label + "' appears twice", line_no);
    seen[id->index()] = true;
    return id->index();
  };

  const auto header = text::split_csv(lines[0], delim, 1);
  const std::size_t n = header.size() - 1;
  std::vector<bool> col_seen(registry.size(), false);
  std::vector<std::size_t> col_index;
  for (std::size_t c = 1; c < header.size(); ++c)
    col_index.push_back(resolve(std::string(text::trim(header[c])), 1, col_seen));

  std::vector<std::size_t> row_lines;
  for (std::size_t r = 1; r < lines.size(); ++r)
    if (!text::trim(lines[r]).empty()) row_lines.push_back(r);
  if (row_lines.size() != n)
    throw Error(Errc::NotSquare, std::to_string(row_lines.size()) + " data rows for " + std::to_string(n) +
                                     " column labels");
  if (n != registry.size())
    throw Error(Errc::DimensionMismatch, "matrix covers " + std::to_string(n) + " of " +
                                             std::to_string(registry.size()) + " registry categories");

  std::vector<bool> row_seen(registry.size(), false);
  Matrix cells = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (auto r : row_lines) {
    const auto fields = text::split_csv(lines[r], delim, r + 1);
    if (fields.size() != n + 1)
      throw Error(Errc::NotSquare, "row has " + std::to_string(fields.size() - 1) + " cells, expected " +
                                       std::to_string(n), r + 1);
    const auto i = resolve(std::string(text::trim(fields[0])), r + 1, row_seen);
    for (std::size_t c = 0; c < n; ++c) {
      auto v = text::parse_double(fields[c + 1]);
      if (!v) throw Error(Errc::ParseError, "cell '" + fields[c + 1] + "' is not a number", r + 1);
      if (*v < 0) throw Error(Errc::NegativeCell, "negative cell " + fields[c + 1], r + 1);
      cells(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(col_index[c])) = *v;
    }
  }
  return CitationMatrix(std::move(cells));
}

inline CitationMatrix parse_citation_matrix(const std::string& content, const CategoryRegistry& registry) {
  std::istringstream in(content);
  return parse_citation_matrix(in, registry);
}

/// Writes in registry order with shortest round-trip number formatting.
inline std::string write_citation_matrix(const CitationMatrix& m, const CategoryRegistry& registry,
                                         char delim = ',') {
  if (m.size() != registry.size())
    throw Error(Errc::DimensionMismatch, "matrix and registry sizes differ");
  std::string out = "\"\"";
  for (const auto& label : registry.labels()) {
    out.push_back(delim);
    out += text::csv_field(label, delim);
  }
  out.push_back('\n');
  for (std::size_t i = 0; i < m.size(); ++i) {
    out += text::csv_field(registry.labels()[i], delim);
    for (std::size_t j = 0; j < m.size(); ++j) {
      out.push_back(delim);
      out += text::roundtrip(m(i, j));
    }
    out.push_back('\n');
  }
  return out;
}

/// One canonical label per line; id = line number.
inline CategoryRegistry read_registry(std::istream& in) {
  auto lines = text::read_lines(in);
  while (!lines.empty() && text::trim(lines.back()).empty()) lines.pop_back();
  std::vector<std::string> labels;
  labels.reserve(lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i) {
    auto label = text::trim(lines[i]);
    if (label.empty()) throw Error(Errc::ParseError, "blank line inside registry", i + 1);
    labels.emplace_back(label);
  }
  if (labels.empty()) throw Error(Errc::ParseError, "registry is empty");
  return CategoryRegistry(std::move(labels));
}

inline std::string write_registry(const CategoryRegistry& registry) {
  std::string out;
  for (const auto& label : registry.labels()) out += label + "\n";
  return out;
}

/// CSV with header `label,group` and an optional `group_name` column. Every
/// registry category must be listed exactly once.
inline Partition read_partition_csv(std::istream& in, const CategoryRegistry& registry) {
  auto lines = text::read_lines(in);
  if (lines.empty()) throw Error(Errc::ParseError, "partition file is empty");
  const auto header = text::split_csv(lines[0], ',', 1);
  const bool has_names = header.size() == 3 && text::trim(header[2]) == "group_name";
  if (header.size() < 2 || text::trim(header[0]) != "label" || text::trim(header[1]) != "group" ||
      (header.size() == 3 && !has_names) || header.size() > 3)
    throw Error(Errc::ParseError, "expected header 'label,group[,group_name]'", 1);

  std::vector<int> assignment(registry.size(), 0);
  std::map<int, std::string> names;
  for (std::size_t r = 1; r < lines.size(); ++r) {
    if (text::trim(lines[r]).empty()) continue;
    const auto fields = text::split_csv(lines[r], ',', r + 1);
    if (fields.size() != header.size()) throw Error(Errc::ParseError, "wrong number of fields", r + 1);
    auto id = registry.lookup(fields[0]);
    if (!id) throw Error(Errc::UnknownLabel, "partition label '" + fields[0] + "' is not in the registry", r + 1);
    auto group = text::parse_int(fields[1]);
    if (!group || *group < 1) throw Error(Errc::ParseError, "group must be an integer >= 1", r + 1);
    if (assignment[id->index()] != 0)
      throw Error(Errc::ParseError, "label '" + fields[0] + "' assigned twice", r + 1);
    assignment[id->index()] = static_cast<int>(*group);
    if (has_names) {
      auto [it, inserted] = names.emplace(static_cast<int>(*group), fields[2]);
      if (!inserted && it->second != fields[2])
        throw Error(Errc::ParseError, "group " + fields[1] + " has two different names", r + 1);
    }
  }
  for (std::size_t i = 0; i < assignment.size(); ++i)
    if (assignment[i] == 0)
      throw Error(Errc::ParseError, "category '" + registry.labels()[i] + "' has no group");
  std::vector<std::string> group_names;
  if (has_names)
    for (const auto& [g, name] : names) group_names.push_back(name);
  return Partition(std::move(assignment), std::move(group_names));
}

inline std::string write_partition_csv(const Partition& p, const CategoryRegistry& registry) {
  if (p.size() != registry.size()) throw Error(Errc::DimensionMismatch, "partition and registry sizes differ");
  const bool names = !p.group_names().empty();
  std::string out = names ? "label,group,group_name\n" : "label,group\n";
  for (std::size_t i = 0; i < p.size(); ++i) {
    out += text::csv_field(registry.labels()[i]) + "," + std::to_string(p.group(i));
    if (names) out += "," + text::csv_field(p.group_names()[static_cast<std::size_t>(p.group(i) - 1)]);
    out += "\n";
  }
  return out;
}

}  // namespace scimap
