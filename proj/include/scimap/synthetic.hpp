#pragma once

// Synthetic citation data with planted nested structure (19 fields inside 6
// domains inside 4 branches), for demos, calibration and tests where the
// licensed citation data is unavailable.

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "scimap/basemap.hpp"
#include "scimap/categories.hpp"
#include "scimap/core.hpp"

namespace scimap::synthetic {

// Field (1..19) -> domain (1..6) -> branch (1..4).
inline constexpr std::array<int, 19> kDomainOfField = {1, 1, 1, 2, 2, 2, 3, 3, 3, 4, 4, 4, 5, 5, 5, 6, 6, 6, 6};
inline constexpr std::array<int, 6> kBranchOfDomain = {1, 1, 2, 3, 4, 4};

/// Fields 1 and 2 hold exactly the computer-science / mathematical-methods
/// split; every other category is dealt round-robin over fields 3..19 in
/// registry order.
inline Partition planted_fields(const CategoryRegistry& registry) {
  std::vector<int> field(registry.size(), 0);
  for (const auto& [label, group] : computing_split()) {
    auto id = registry.lookup(label);
    if (!id) throw Error(Errc::UnknownLabel, "registry lacks '" + std::string(label) + "'");
    field[id->index()] = group == kComputerScience ? 1 : 2;
  }
  int next = 0;
  for (auto& f : field)
    if (f == 0) f = 3 + (next++ % 17);
  std::vector<std::string> names = {std::string(kComputerScience), std::string(kMathematicalMethods)};
  for (int f = 3; f <= 19; ++f) names.push_back("Synthetic field " + std::to_string(f));
  return Partition(std::move(field), std::move(names));
}

inline Partition coarsen(const Partition& fine, const int* parent) {
  std::vector<int> out;
  out.reserve(fine.size());
  for (int g : fine.assignment()) out.push_back(parent[g - 1]);
  return Partition(std::move(out));
}

inline Partition planted_domains(const Partition& fields) { return coarsen(fields, kDomainOfField.data()); }
inline Partition planted_branches(const Partition& fields) {
  return coarsen(planted_domains(fields), kBranchOfDomain.data());
}

/// Citing row i puts weight on cited column j by relatedness: same field
/// 100, same domain 25, same branch 8, otherwise 1, times a seeded factor in
/// [0.5, 1.5); self-citation gets 300. Cells are rounded to whole citations.
inline CitationMatrix citation_matrix(const CategoryRegistry& registry, std::uint64_t seed = 2010) {
  const auto fields = planted_fields(registry);
  const auto domains = planted_domains(fields);
  const auto branches = planted_branches(fields);
  const std::size_t n = registry.size();
  auto rng = detail::seeded_rng(seed, 0x73796e7468ULL);
  Matrix cells(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double base = 1.0;
      if (i == j) base = 300.0;
      else if (fields.group(i) == fields.group(j)) base = 100.0;
      else if (domains.group(i) == domains.group(j)) base = 25.0;
      else if (branches.group(i) == branches.group(j)) base = 8.0;
      cells(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          std::round(base * (0.5 + detail::uniform01(rng)));
    }
  }
  return CitationMatrix(std::move(cells));
}

/// A tab-separated "Analyze Results" export: a title line, a header row and
/// `(label, count)` rows for the given categories.
inline std::string analyze_export(const std::vector<std::pair<std::string, long long>>& rows) {
  long long total = 0;
  for (const auto& r : rows) total += r.second;
  std::string out = "Web of Science Categories\nField: Web of Science Categories\tRecord Count\t% of " +
                    std::to_string(total) + "\tBar Chart\n";
  for (const auto& [label, count] : rows) {
    out += label + "\t" + std::to_string(count) + "\t";
    out += text::fixed(total ? 100.0 * static_cast<double>(count) / static_cast<double>(total) : 0.0, 3) + " %\t\n";
  }
  return out;
}

}  // namespace scimap::synthetic
