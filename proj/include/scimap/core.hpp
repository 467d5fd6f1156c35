#pragma once

// Domain model shared by the whole pipeline: category registry, citation and
// similarity matrices, partitions, base maps and overlay vectors. All types
// validate on construction and are immutable afterwards.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <compare>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "scimap/error.hpp"

namespace scimap {

using Matrix = Eigen::MatrixXd;

/// Case-folds, trims, collapses runs of whitespace to one space and rewrites
/// the word "and" as "&". Commas and other punctuation are kept.
inline std::string normalize_label(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  std::size_t i = 0;
  while (i < raw.size()) {
    while (i < raw.size() && std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
    if (i == raw.size()) break;
    std::size_t j = i;
    while (j < raw.size() && !std::isspace(static_cast<unsigned char>(raw[j]))) ++j;
    std::string token;
    token.reserve(j - i);
    for (std::size_t c = i; c < j; ++c)
      token.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(raw[c]))));
    if (token == "and") token = "&";
    if (!out.empty()) out.push_back(' ');
    out += token;
    i = j;
  }
  return out;
}

/// 1-based category identifier, matching Pajek vertex numbering.
struct CategoryId {
  int value = 0;

  std::size_t index() const { return static_cast<std::size_t>(value - 1); }
  static CategoryId from_index(std::size_t i) { return CategoryId{static_cast<int>(i + 1)}; }

  friend auto operator<=>(const CategoryId&, const CategoryId&) = default;
};

class CategoryRegistry {
 public:
  CategoryRegistry() = default;

  /// Ids are assigned in the given order starting at 1. Throws DuplicateLabel
  /// on the first label whose normalized form repeats an earlier one.
  explicit CategoryRegistry(std::vector<std::string> labels) : labels_(std::move(labels)) {
    by_key_.reserve(labels_.size());
    for (std::size_t i = 0; i < labels_.size(); ++i) {
      auto key = normalize_label(labels_[i]);
      if (key.empty())
        throw Error(Errc::InvalidArgument, "empty category label", i + 1);
      auto [it, inserted] = by_key_.emplace(std::move(key), static_cast<int>(i + 1));
      if (!inserted)
        throw Error(Errc::DuplicateLabel,
                    "label '" + labels_[i] + "' duplicates id " + std::to_string(it->second),
                    i + 1);
    }
  }

  std::size_t size() const { return labels_.size(); }
  bool empty() const { return labels_.empty(); }

  const std::string& label(CategoryId id) const { return labels_.at(id.index()); }
  const std::vector<std::string>& labels() const { return labels_; }

  std::optional<CategoryId> lookup(std::string_view raw) const {
    auto it = by_key_.find(normalize_label(raw));
    if (it == by_key_.end()) return std::nullopt;
    return CategoryId{it->second};
  }

  friend bool operator==(const CategoryRegistry& a, const CategoryRegistry& b) {
    return a.labels_ == b.labels_;
  }

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, int> by_key_;
};

using RegistryPtr = std::shared_ptr<const CategoryRegistry>;

/// Aggregated citations; row = citing category, column = cited category.
class CitationMatrix {
 public:
  CitationMatrix() = default;

  explicit CitationMatrix(Matrix cells) : cells_(std::move(cells)) {
    if (cells_.rows() != cells_.cols())
      throw Error(Errc::NotSquare, "citation matrix is " + std::to_string(cells_.rows()) + "x" +
                                       std::to_string(cells_.cols()));
    for (Eigen::Index i = 0; i < cells_.rows(); ++i)
      for (Eigen::Index j = 0; j < cells_.cols(); ++j)
        if (!(cells_(i, j) >= 0.0) || !std::isfinite(cells_(i, j)))
          throw Error(Errc::NegativeCell, "cell (" + std::to_string(i + 1) + "," +
                                              std::to_string(j + 1) + ") is negative or not finite");
  }

  std::size_t size() const { return static_cast<std::size_t>(cells_.rows()); }
  double operator()(std::size_t i, std::size_t j) const {
    return cells_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  const Matrix& cells() const { return cells_; }

  /// Rows with no citations at all; their similarities are reported as zero.
  std::vector<CategoryId> zero_rows() const {
    std::vector<CategoryId> out;
    for (Eigen::Index i = 0; i < cells_.rows(); ++i)
      if (cells_.row(i).sum() == 0.0) out.push_back(CategoryId::from_index(static_cast<std::size_t>(i)));
    return out;
  }

 private:
  Matrix cells_;
};

/// Symmetric similarity with values clamped to [0, 1].
class SimilarityMatrix {
 public:
  static constexpr double kSymmetryTolerance = 1e-12;

  SimilarityMatrix() = default;

  explicit SimilarityMatrix(Matrix cells) : cells_(std::move(cells)) {
    if (cells_.rows() != cells_.cols())
      throw Error(Errc::NotSquare, "similarity matrix must be square");
    const Eigen::Index n = cells_.rows();
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) {
        if (!std::isfinite(cells_(i, j)))
          throw Error(Errc::InvalidArgument, "similarity is not finite");
        if (j > i && std::abs(cells_(i, j) - cells_(j, i)) > kSymmetryTolerance)
          throw Error(Errc::InvalidArgument, "similarity matrix is not symmetric");
        cells_(i, j) = std::clamp(cells_(i, j), 0.0, 1.0);
      }
    }
  }

  std::size_t size() const { return static_cast<std::size_t>(cells_.rows()); }
  double operator()(std::size_t i, std::size_t j) const {
    return cells_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  const Matrix& cells() const { return cells_; }

  /// d_ij = 1 - s_ij with an exact zero diagonal.
  Matrix distances() const {
    Matrix d = Matrix::Ones(cells_.rows(), cells_.cols()) - cells_;
    d.diagonal().setZero();
    return d;
  }

 private:
  Matrix cells_;
};

/// Assignment of n items to groups 1..k; every group is non-empty.
class Partition {
 public:
  Partition() = default;

  explicit Partition(std::vector<int> assignment, std::vector<std::string> group_names = {})
      : assignment_(std::move(assignment)), names_(std::move(group_names)) {
    if (assignment_.empty()) throw Error(Errc::InvalidArgument, "partition has no items");
    k_ = *std::max_element(assignment_.begin(), assignment_.end());
    std::vector<bool> seen(static_cast<std::size_t>(std::max(k_, 0)), false);
    for (int g : assignment_) {
      if (g < 1) throw Error(Errc::InvalidArgument, "group ids must be >= 1");
      seen[static_cast<std::size_t>(g - 1)] = true;
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end())
      throw Error(Errc::InvalidArgument, "group ids must cover 1..k without gaps");
    if (!names_.empty() && names_.size() != static_cast<std::size_t>(k_))
      throw Error(Errc::InvalidArgument, "expected " + std::to_string(k_) + " group names");
  }

  /// Relabels arbitrary non-negative labels to 1..k in order of first
  /// appearance.
  static Partition compact(const std::vector<int>& raw) {
    std::unordered_map<int, int> relabel;
    std::vector<int> out;
    out.reserve(raw.size());
    for (int r : raw) {
      auto [it, _] = relabel.emplace(r, static_cast<int>(relabel.size()) + 1);
      out.push_back(it->second);
    }
    return Partition(std::move(out));
  }

  /// Relabels so that group 1 is the largest; ties go to the group whose
  /// first member has the lowest index.
  static Partition compact_by_size(const std::vector<int>& raw) {
    auto first = compact(raw);
    const auto k = static_cast<std::size_t>(first.k());
    std::vector<std::size_t> sizes(k, 0);
    for (int g : first.assignment()) ++sizes[static_cast<std::size_t>(g - 1)];
    std::vector<int> order(k);
    for (std::size_t g = 0; g < k; ++g) order[g] = static_cast<int>(g);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return sizes[static_cast<std::size_t>(a)] > sizes[static_cast<std::size_t>(b)]; });
    std::vector<int> rank(k);
    for (std::size_t r = 0; r < k; ++r) rank[static_cast<std::size_t>(order[r])] = static_cast<int>(r + 1);
    std::vector<int> out;
    out.reserve(raw.size());
    for (int g : first.assignment()) out.push_back(rank[static_cast<std::size_t>(g - 1)]);
    return Partition(std::move(out));
  }

  int k() const { return k_; }
  std::size_t size() const { return assignment_.size(); }
  int group(std::size_t i) const { return assignment_.at(i); }
  const std::vector<int>& assignment() const { return assignment_; }
  const std::vector<std::string>& group_names() const { return names_; }

  std::vector<std::size_t> group_sizes() const {
    std::vector<std::size_t> sizes(static_cast<std::size_t>(k_), 0);
    for (int g : assignment_) ++sizes[static_cast<std::size_t>(g - 1)];
    return sizes;
  }

  Partition with_names(std::vector<std::string> names) const { return Partition(assignment_, std::move(names)); }

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<int> assignment_;
  std::vector<std::string> names_;
  int k_ = 0;
};

/// True when both partitions induce the same grouping, ignoring group ids.
inline bool same_grouping(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size()) return false;
  std::unordered_map<int, int> ab, ba;
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto [x, nx] = ab.emplace(a[i], b[i]);
    auto [y, ny] = ba.emplace(b[i], a[i]);
    if (x->second != b[i] || y->second != a[i]) return false;
  }
  return true;
}

struct Point2 {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point2&, const Point2&) = default;
};

struct Edge {
  CategoryId from;
  CategoryId to;
  double similarity = 0.0;
  friend bool operator==(const Edge&, const Edge&) = default;
};

struct BaseMap {
  RegistryPtr registry;
  std::vector<Point2> coords;
  Partition partition19;
  Partition partition6;
  Partition partition4;
  std::vector<double> weights;
  std::vector<Edge> edges;
  // Full similarity, needed for diversity distances; edges only hold the
  // pairs above the display threshold.
  SimilarityMatrix similarity;

  std::size_t size() const { return coords.size(); }

  const Partition& partition(int choice) const {
    switch (choice) {
      case 19: return partition19;
      case 6: return partition6;
      case 4: return partition4;
      default: throw Error(Errc::InvalidArgument, "partition choice must be 4, 6 or 19");
    }
  }
};

struct UnmatchedRow {
  std::string raw_label;
  long long count = 0;
};

/// Category counts of one document set, normalized over matched counts.
class OverlayVector {
 public:
  OverlayVector() = default;

  OverlayVector(RegistryPtr registry, std::vector<long long> counts,
                std::vector<UnmatchedRow> unmatched = {})
      : registry_(std::move(registry)), counts_(std::move(counts)), unmatched_(std::move(unmatched)) {
    if (!registry_ || counts_.size() != registry_->size())
      throw Error(Errc::DimensionMismatch, "overlay counts do not match registry size");
    long double total = 0;
    for (auto c : counts_) {
      if (c < 0) throw Error(Errc::InvalidArgument, "negative category count");
      total += static_cast<long double>(c);
    }
    total_ = static_cast<long long>(total);
    proportions_.assign(counts_.size(), 0.0);
    if (total_ > 0)
      for (std::size_t i = 0; i < counts_.size(); ++i)
        proportions_[i] = static_cast<double>(counts_[i]) / static_cast<double>(total_);
  }

  const RegistryPtr& registry() const { return registry_; }
  std::size_t size() const { return counts_.size(); }
  const std::vector<long long>& counts() const { return counts_; }
  const std::vector<double>& proportions() const { return proportions_; }
  const std::vector<UnmatchedRow>& unmatched() const { return unmatched_; }
  long long total() const { return total_; }

  std::size_t nonzero() const {
    return static_cast<std::size_t>(std::count_if(counts_.begin(), counts_.end(), [](long long c) { return c > 0; }));
  }

 private:
  RegistryPtr registry_;
  std::vector<long long> counts_;
  std::vector<double> proportions_;
  std::vector<UnmatchedRow> unmatched_;
  long long total_ = 0;
};

/// Proportions and pairwise distances for the diversity computation.
class DiversityInput {
 public:
  static constexpr double kSumTolerance = 1e-9;

  DiversityInput(std::vector<double> p, Matrix d) : p_(std::move(p)), d_(std::move(d)) {
    if (d_.rows() != d_.cols() || static_cast<std::size_t>(d_.rows()) != p_.size())
      throw Error(Errc::DimensionMismatch, "proportions have " + std::to_string(p_.size()) +
                                               " entries, distance matrix is " +
                                               std::to_string(d_.rows()) + "x" + std::to_string(d_.cols()));
    double sum = 0.0;
    for (double v : p_) {
      if (!(v >= 0.0 && v <= 1.0)) throw Error(Errc::InvalidArgument, "proportion outside [0,1]");
      sum += v;
    }
    if (std::abs(sum - 1.0) > kSumTolerance) throw Error(Errc::InvalidArgument, "proportions do not sum to 1");
    const Eigen::Index n = d_.rows();
    for (Eigen::Index i = 0; i < n; ++i) {
      if (d_(i, i) != 0.0) throw Error(Errc::InvalidArgument, "distance diagonal must be zero");
      for (Eigen::Index j = i + 1; j < n; ++j) {
        if (d_(i, j) != d_(j, i)) throw Error(Errc::InvalidArgument, "distance matrix is not symmetric");
        if (!(d_(i, j) >= 0.0 && d_(i, j) <= 1.0)) throw Error(Errc::InvalidArgument, "distance outside [0,1]");
      }
    }
  }

  static DiversityInput from(const BaseMap& base, const OverlayVector& overlay) {
    if (!base.registry || !overlay.registry() || !(*base.registry == *overlay.registry()))
      throw Error(Errc::RegistryMismatch, "overlay was built against a different registry");
    return DiversityInput(overlay.proportions(), base.similarity.distances());
  }

  const std::vector<double>& p() const { return p_; }
  const Matrix& d() const { return d_; }
  std::size_t size() const { return p_.size(); }

 private:
  std::vector<double> p_;
  Matrix d_;
};

}  // namespace scimap
