#pragma once

// Base-map construction from a category-citation matrix: cosine similarity
// of citing patterns, principal components with varimax rotation, VOS
// layout and VOS clustering.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "scimap/core.hpp"
#include "scimap/text.hpp"

namespace scimap {

namespace detail {

inline std::mt19937_64 seeded_rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}

// Portable across standard libraries, unlike uniform_real_distribution.
inline double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline std::size_t uniform_index(std::mt19937_64& rng, std::size_t n) {
  return static_cast<std::size_t>(uniform01(rng) * static_cast<double>(n));
}

template <typename T>
void shuffle(std::vector<T>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[uniform_index(rng, i)]);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Cosine similarity

/// s_ij = <row_i, row_j> / (|row_i| |row_j|); zero rows have similarity 0 to
/// everything, including themselves.
inline SimilarityMatrix cosine_similarity(const CitationMatrix& m) {
  const Eigen::Index n = static_cast<Eigen::Index>(m.size());
  Matrix unit = m.cells();
  std::vector<bool> nonzero(static_cast<std::size_t>(n), false);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double norm = unit.row(i).norm();
    if (norm > 0.0) {
      unit.row(i) /= norm;
      nonzero[static_cast<std::size_t>(i)] = true;
    }
  }
  Matrix s = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!nonzero[static_cast<std::size_t>(i)]) continue;
    s(i, i) = 1.0;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      if (!nonzero[static_cast<std::size_t>(j)]) continue;
      const double v = std::clamp(unit.row(i).dot(unit.row(j)), 0.0, 1.0);
      s(i, j) = v;
      s(j, i) = v;
    }
  }
  return SimilarityMatrix(std::move(s));
}

// ---------------------------------------------------------------------------
// Factor analysis

struct FactorModel {
  int requested_k = 0;
  int k = 0;
  Matrix loadings;  // n x k, rotated
  std::vector<double> explained_variance_ratio;
  Partition assignment;
  bool rank_deficient = false;
  int varimax_sweeps = 0;

  double total_explained() const {
    return std::accumulate(explained_variance_ratio.begin(), explained_variance_ratio.end(), 0.0);
  }
};

inline double varimax_criterion(const Matrix& l) {
  const double n = static_cast<double>(l.rows());
  double v = 0.0;
  for (Eigen::Index c = 0; c < l.cols(); ++c) {
    const double s2 = l.col(c).squaredNorm();
    v += l.col(c).array().pow(4).sum() - s2 * s2 / n;
  }
  return v;
}

struct VarimaxResult {
  Matrix loadings;
  int sweeps = 0;
};

/// Kaiser-normalized varimax by successive planar rotations. Stops when a
/// full sweep improves the criterion by less than `tolerance`.
inline VarimaxResult varimax(const Matrix& loadings, double tolerance = 1e-8, int max_sweeps = 200) {
  const Eigen::Index n = loadings.rows();
  const Eigen::Index k = loadings.cols();
  Eigen::VectorXd h = loadings.rowwise().norm();
  Matrix l = loadings;
  for (Eigen::Index i = 0; i < n; ++i)
    if (h(i) > 0.0) l.row(i) /= h(i);
  if (k < 2) return {loadings, 0};

  const double nd = static_cast<double>(n);
  double criterion = varimax_criterion(l);
  int sweep = 0;
  while (sweep < max_sweeps) {
    ++sweep;
    for (Eigen::Index a = 0; a < k - 1; ++a) {
      for (Eigen::Index b = a + 1; b < k; ++b) {
        double sum_u = 0, sum_v = 0, sum_c = 0, sum_d = 0;
        for (Eigen::Index i = 0; i < n; ++i) {
          const double x = l(i, a), y = l(i, b);
          const double u = x * x - y * y, v = 2.0 * x * y;
          sum_u += u;
          sum_v += v;
          sum_c += u * u - v * v;
          sum_d += 2.0 * u * v;
        }
        const double num = sum_d - 2.0 * sum_u * sum_v / nd;
        const double den = sum_c - (sum_u * sum_u - sum_v * sum_v) / nd;
        if (num == 0.0 && den >= 0.0) continue;
        const double phi = std::atan2(num, den) / 4.0;
        const double c = std::cos(phi), s = std::sin(phi);
        for (Eigen::Index i = 0; i < n; ++i) {
          const double x = l(i, a), y = l(i, b);
          l(i, a) = c * x + s * y;
          l(i, b) = -s * x + c * y;
        }
      }
    }
    const double next = varimax_criterion(l);
    const bool done = next - criterion < tolerance;
    criterion = next;
    if (done) break;
  }
  for (Eigen::Index i = 0; i < n; ++i) l.row(i) *= h(i);
  return {l, sweep};
}

/// Index of the largest absolute entry per row; ties go to the lower index.
inline std::vector<int> max_abs_assignment(const Matrix& loadings) {
  std::vector<int> out(static_cast<std::size_t>(loadings.rows()), 0);
  for (Eigen::Index i = 0; i < loadings.rows(); ++i) {
    Eigen::Index best = 0;
    for (Eigen::Index c = 1; c < loadings.cols(); ++c)
      if (std::abs(loadings(i, c)) > std::abs(loadings(i, best))) best = c;
    out[static_cast<std::size_t>(i)] = static_cast<int>(best);
  }
  return out;
}

/// Principal components of a symmetric matrix (normally the cosine matrix),
/// varimax-rotated. Rotated factors are ordered by explained variance and
/// each row is assigned to the factor with the largest absolute loading.
/// Fewer than `k` components with eigenvalue > 1e-10 reduces k and sets
/// `rank_deficient`.
inline FactorModel factor_analysis(const Matrix& input, int k = 19) {
  const Eigen::Index n = input.rows();
  if (n == 0 || input.cols() != n) throw Error(Errc::NotSquare, "factor analysis needs a square matrix");
  if (k < 1 || k > n) throw Error(Errc::InvalidArgument, "k must lie in 1..n");
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j)
      if (std::abs(input(i, j) - input(j, i)) > 1e-9)
        throw Error(Errc::InvalidArgument, "factor analysis needs a symmetric matrix");

  constexpr double kEigenFloor = 1e-10;
  Eigen::SelfAdjointEigenSolver<Matrix> eig(input);
  if (eig.info() != Eigen::Success) throw Error(Errc::InvalidArgument, "eigen decomposition failed");
  const Eigen::VectorXd& values = eig.eigenvalues();  // ascending
  double total = 0.0;
  int usable = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    total += std::max(values(i), 0.0);
    if (values(i) > kEigenFloor) ++usable;
  }
  if (usable == 0) throw Error(Errc::InvalidArgument, "matrix has no component with positive variance");

  FactorModel model;
  model.requested_k = k;
  model.rank_deficient = usable < k;
  model.k = std::min(k, usable);

  Matrix raw(n, model.k);
  for (int c = 0; c < model.k; ++c) {
    const Eigen::Index src = n - 1 - c;
    raw.col(c) = eig.eigenvectors().col(src) * std::sqrt(values(src));
  }
  auto rotated = varimax(raw);
  model.varimax_sweeps = rotated.sweeps;
  Matrix& l = rotated.loadings;

  for (int c = 0; c < model.k; ++c) {
    double sum = l.col(c).sum();
    if (sum == 0.0) {
      Eigen::Index arg = 0;
      l.col(c).cwiseAbs().maxCoeff(&arg);
      sum = l(arg, c);
    }
    if (sum < 0.0) l.col(c) *= -1.0;
  }

  std::vector<int> order(static_cast<std::size_t>(model.k));
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> ss(static_cast<std::size_t>(model.k));
  for (int c = 0; c < model.k; ++c) ss[static_cast<std::size_t>(c)] = l.col(c).squaredNorm();
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return ss[static_cast<std::size_t>(a)] > ss[static_cast<std::size_t>(b)]; });
  model.loadings.resize(n, model.k);
  for (int c = 0; c < model.k; ++c) {
    const auto src = static_cast<std::size_t>(order[static_cast<std::size_t>(c)]);
    model.loadings.col(c) = l.col(static_cast<Eigen::Index>(src));
    model.explained_variance_ratio.push_back(ss[src] / total);
  }

  // Drop factors nobody is assigned to, keeping factor order.
  auto raw_assignment = max_abs_assignment(model.loadings);
  std::vector<int> used(static_cast<std::size_t>(model.k), 0);
  for (int f : raw_assignment) used[static_cast<std::size_t>(f)] = 1;
  std::vector<int> relabel(static_cast<std::size_t>(model.k), 0);
  int next = 0;
  for (int f = 0; f < model.k; ++f)
    if (used[static_cast<std::size_t>(f)]) relabel[static_cast<std::size_t>(f)] = ++next;
  for (int& f : raw_assignment) f = relabel[static_cast<std::size_t>(f)];
  model.assignment = Partition(std::move(raw_assignment));
  return model;
}

// ---------------------------------------------------------------------------
// VOS layout

struct LayoutResult {
  std::vector<Point2> coords;
  // Sum over pairs of s_ij * squared distance, at unit mean distance.
  double objective = 0.0;
  // Objective after every accepted iteration of the winning restart.
  std::vector<double> history;
  bool degenerate = false;
  // Set when the similarity graph is disconnected and a uniform attraction
  // was added to keep components at finite distance.
  bool regularized = false;
  int best_restart = 0;
};

inline double mean_pairwise_distance(const std::vector<Point2>& p) {
  const std::size_t n = p.size();
  if (n < 2) return 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) sum += std::hypot(p[i].x - p[j].x, p[i].y - p[j].y);
  return 2.0 * sum / (static_cast<double>(n) * static_cast<double>(n - 1));
}

/// Sum_{i<j} w_ij |x_i - x_j|^2 evaluated after rescaling to unit mean distance.
inline double layout_objective(const Matrix& w, const std::vector<Point2>& p) {
  const double mean = mean_pairwise_distance(p);
  if (mean == 0.0) return std::numeric_limits<double>::infinity();
  double v = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j) {
      const double dx = p[i].x - p[j].x, dy = p[i].y - p[j].y;
      v += w(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) * (dx * dx + dy * dy);
    }
  return v / (mean * mean);
}

namespace detail {

inline bool connected(const Matrix& w) {
  const Eigen::Index n = w.rows();
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  std::vector<Eigen::Index> stack{0};
  seen[0] = true;
  Eigen::Index count = 1;
  while (!stack.empty()) {
    auto i = stack.back();
    stack.pop_back();
    for (Eigen::Index j = 0; j < n; ++j)
      if (j != i && w(i, j) > 0.0 && !seen[static_cast<std::size_t>(j)]) {
        seen[static_cast<std::size_t>(j)] = true;
        ++count;
        stack.push_back(j);
      }
  }
  return count == n;
}

inline void scale_to_unit_mean(std::vector<Point2>& p) {
  const double mean = mean_pairwise_distance(p);
  if (mean > 0.0)
    for (auto& q : p) {
      q.x /= mean;
      q.y /= mean;
    }
}

/// Centers, rotates onto principal axes (x = largest spread) and fixes the
/// sign of each axis so its third moment is non-negative.
inline void canonicalize(std::vector<Point2>& p) {
  const double n = static_cast<double>(p.size());
  double cx = 0, cy = 0;
  for (const auto& q : p) {
    cx += q.x;
    cy += q.y;
  }
  cx /= n;
  cy /= n;
  Eigen::Matrix2d cov = Eigen::Matrix2d::Zero();
  for (auto& q : p) {
    q.x -= cx;
    q.y -= cy;
    cov(0, 0) += q.x * q.x;
    cov(0, 1) += q.x * q.y;
    cov(1, 1) += q.y * q.y;
  }
  cov(1, 0) = cov(0, 1);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eig(cov);
  const Eigen::Vector2d ax = eig.eigenvectors().col(1);
  const Eigen::Vector2d ay = eig.eigenvectors().col(0);
  double m3x = 0, m3y = 0;
  for (auto& q : p) {
    const double x = ax(0) * q.x + ax(1) * q.y;
    const double y = ay(0) * q.x + ay(1) * q.y;
    q = {x, y};
    m3x += x * x * x;
    m3y += y * y * y;
  }
  for (auto& q : p) {
    if (m3x < 0) q.x = -q.x;
    if (m3y < 0) q.y = -q.y;
    if (q.x == 0.0) q.x = 0.0;
    if (q.y == 0.0) q.y = 0.0;
  }
}

inline std::vector<Point2> circle_layout(std::size_t n, std::uint64_t seed) {
  std::vector<std::size_t> slot(n);
  std::iota(slot.begin(), slot.end(), 0);
  auto rng = seeded_rng(seed, 0x636972636c65ULL);
  shuffle(slot, rng);
  std::vector<Point2> p(n);
  const double two_pi = 2.0 * std::acos(-1.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double a = two_pi * static_cast<double>(slot[i]) / static_cast<double>(n);
    p[i] = {std::cos(a), std::sin(a)};
  }
  return p;
}

}  // namespace detail

struct LayoutOptions {
  std::uint64_t seed = 1;
  int restarts = 10;
  int max_iterations = 1000;
  // Stop when no coordinate moves more than this (at unit mean distance)...
  double coordinate_tolerance = 1e-9;
  // ...or the objective stalls to this relative precision.
  double relative_tolerance = 1e-15;
};

/// Minimizes sum_{i<j} s_ij |x_i - x_j|^2 under unit mean pairwise distance.
/// Each restart iterates the majorization update X <- L^+ B(X) X / 2 of
/// sum s_ij d_ij^2 - sum d_ij, which is scale-free and never increases the
/// normalized objective. The best restart is centered, rotated onto its
/// principal axes and rescaled to unit mean distance.
inline LayoutResult vos_layout(const SimilarityMatrix& s, const LayoutOptions& options = {}) {
  const std::size_t n = s.size();
  if (n < 2) throw Error(Errc::InvalidArgument, "layout needs at least two categories");
  const Eigen::Index ni = static_cast<Eigen::Index>(n);

  Matrix w = s.cells();
  w.diagonal().setZero();
  LayoutResult result;
  if (w.maxCoeff() <= 0.0) {
    result.degenerate = true;
    result.coords = detail::circle_layout(n, options.seed);
    detail::scale_to_unit_mean(result.coords);
    result.objective = 0.0;
    result.history = {0.0};
    return result;
  }
  if (!detail::connected(w)) {
    double sum = 0.0;
    int count = 0;
    for (Eigen::Index i = 0; i < ni; ++i)
      for (Eigen::Index j = i + 1; j < ni; ++j)
        if (w(i, j) > 0.0) {
          sum += w(i, j);
          ++count;
        }
    const double eps = 1e-3 * sum / count;
    w.array() += eps;
    w.diagonal().setZero();
    result.regularized = true;
  }

  Matrix laplacian = -w;
  laplacian.diagonal() = w.rowwise().sum();
  const Matrix shifted = laplacian + Matrix::Constant(ni, ni, 1.0 / static_cast<double>(n));
  const Eigen::LDLT<Matrix> solver(shifted);

  auto to_points = [&](const Matrix& x) {
    std::vector<Point2> p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = {x(static_cast<Eigen::Index>(i), 0), x(static_cast<Eigen::Index>(i), 1)};
    return p;
  };

  // Pairwise distances of x, and the objective they imply.
  auto distances = [&](const Matrix& x, Matrix& d) {
    for (Eigen::Index i = 0; i < ni; ++i) {
      d(i, i) = 0.0;
      for (Eigen::Index j = i + 1; j < ni; ++j) {
        const double dx = x(i, 0) - x(j, 0), dy = x(i, 1) - x(j, 1);
        d(i, j) = d(j, i) = std::sqrt(dx * dx + dy * dy);
      }
    }
  };
  auto objective = [&](const Matrix& d) {
    const double mean = d.sum() / (static_cast<double>(n) * static_cast<double>(n - 1));
    if (mean == 0.0) return std::numeric_limits<double>::infinity();
    return 0.5 * (w.array() * d.array().square()).sum() / (mean * mean);
  };

  double best = std::numeric_limits<double>::infinity();
  Matrix b(ni, ni), d(ni, ni), next_d(ni, ni);
  for (int r = 0; r < std::max(options.restarts, 1); ++r) {
    auto rng = detail::seeded_rng(options.seed, static_cast<std::uint64_t>(r));
    Matrix x(ni, 2);
    for (Eigen::Index i = 0; i < ni; ++i) {
      x(i, 0) = 2.0 * detail::uniform01(rng) - 1.0;
      x(i, 1) = 2.0 * detail::uniform01(rng) - 1.0;
    }
    distances(x, d);
    double current = objective(d);
    std::vector<double> history{current};
    for (int it = 0; it < options.max_iterations; ++it) {
      b = (d.array() > 0.0).select(-d.cwiseInverse(), 0.0);
      b.diagonal() = -b.rowwise().sum();
      Matrix next = solver.solve(b * x) * 0.5;
      distances(next, next_d);
      const double value = objective(next_d);
      if (!(value <= current)) break;
      // Compare shapes at unit mean distance; the update itself is scale-free.
      const double scale_now = d.sum() / (static_cast<double>(n) * static_cast<double>(n - 1));
      const double scale_next = next_d.sum() / (static_cast<double>(n) * static_cast<double>(n - 1));
      const double shift = (next / scale_next - x / scale_now).cwiseAbs().maxCoeff();
      const bool converged =
          shift <= options.coordinate_tolerance || current - value <= options.relative_tolerance * current;
      x = std::move(next);
      d.swap(next_d);
      current = value;
      history.push_back(value);
      if (converged) break;
    }
    if (current < best) {
      best = current;
      result.coords = to_points(x);
      result.history = std::move(history);
      result.best_restart = r;
    }
  }
  detail::canonicalize(result.coords);
  detail::scale_to_unit_mean(result.coords);
  result.objective = layout_objective(w, result.coords);
  return result;
}

// ---------------------------------------------------------------------------
// VOS clustering

/// Sum_{i<j} [c_i == c_j] (s_ij - resolution).
inline double clustering_objective(const SimilarityMatrix& s, const std::vector<int>& assignment,
                                   double resolution) {
  double q = 0.0;
  for (std::size_t i = 0; i < assignment.size(); ++i)
    for (std::size_t j = i + 1; j < assignment.size(); ++j)
      if (assignment[i] == assignment[j]) q += s(i, j) - resolution;
  return q;
}

namespace detail {

// Weighted graph of super-nodes: w(a,b) sums similarities between members,
// size(a) counts members.
struct ClusterLevel {
  Matrix w;
  std::vector<double> size;
};

// Moves single nodes to the neighbouring cluster with the best gain until
// no move helps. Returns true if any node changed cluster.
inline bool local_moving(const ClusterLevel& g, double resolution, std::vector<int>& cluster,
                         std::mt19937_64& rng) {
  const std::size_t n = g.size.size();
  std::vector<double> cluster_size(n, 0.0);
  for (std::size_t v = 0; v < n; ++v) cluster_size[static_cast<std::size_t>(cluster[v])] += g.size[v];
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  shuffle(order, rng);

  std::vector<double> link(n, 0.0);
  bool any = false;
  bool moved = true;
  while (moved) {
    moved = false;
    for (std::size_t v : order) {
      std::fill(link.begin(), link.end(), 0.0);
      for (std::size_t u = 0; u < n; ++u)
        if (u != v) link[static_cast<std::size_t>(cluster[u])] += g.w(static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(u));
      const auto own = static_cast<std::size_t>(cluster[v]);
      cluster_size[own] -= g.size[v];
      auto gain = [&](std::size_t c) { return link[c] - resolution * g.size[v] * cluster_size[c]; };
      const double own_gain = gain(own);
      std::size_t best = own;
      double best_gain = own_gain;
      bool empty_tried = cluster_size[own] == 0.0;
      for (std::size_t c = 0; c < n; ++c) {
        if (c == own) continue;
        if (cluster_size[c] == 0.0) {
          if (empty_tried) continue;
          empty_tried = true;
        }
        const double g = gain(c);
        if (g > best_gain) {
          best = c;
          best_gain = g;
        }
      }
      if (best_gain <= own_gain + 1e-12) best = own;
      cluster_size[best] += g.size[v];
      if (best != own) {
        cluster[v] = static_cast<int>(best);
        moved = any = true;
      }
    }
  }
  return any;
}

// Sums member weights and sizes of `level` into the groups of `group`
// (0-based, dense).
inline ClusterLevel aggregate(const ClusterLevel& level, const std::vector<int>& group, std::size_t k) {
  const std::size_t m = level.size.size();
  ClusterLevel next{Matrix::Zero(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)),
                    std::vector<double>(k, 0.0)};
  for (std::size_t a = 0; a < m; ++a) {
    const auto ga = static_cast<Eigen::Index>(group[a]);
    next.size[static_cast<std::size_t>(ga)] += level.size[a];
    for (std::size_t b = 0; b < m; ++b) {
      const auto gb = static_cast<Eigen::Index>(group[b]);
      if (ga != gb) next.w(ga, gb) += level.w(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
    }
  }
  return next;
}

inline std::vector<int> dense(const std::vector<int>& labels) {
  auto compact = Partition::compact(labels).assignment();
  for (auto& c : compact) --c;
  return compact;
}

// Smart local moving: local moving from `cluster`, then every cluster is
// split into subclusters by local moving inside it, the subclusters become
// nodes of the next level (starting in their parent cluster) and the
// procedure recurses. `cluster` is updated in place.
inline void smart_local_moving(const ClusterLevel& level, double resolution, std::vector<int>& cluster,
                               std::mt19937_64& rng) {
  const std::size_t m = level.size.size();
  local_moving(level, resolution, cluster, rng);
  cluster = dense(cluster);
  const auto k = static_cast<std::size_t>(*std::max_element(cluster.begin(), cluster.end()) + 1);
  if (k == m) return;

  std::vector<int> sub(m, 0);
  int next_sub = 0;
  for (std::size_t c = 0; c < k; ++c) {
    std::vector<std::size_t> members;
    for (std::size_t v = 0; v < m; ++v)
      if (static_cast<std::size_t>(cluster[v]) == c) members.push_back(v);
    ClusterLevel inner{Matrix(static_cast<Eigen::Index>(members.size()), static_cast<Eigen::Index>(members.size())),
                       std::vector<double>(members.size())};
    for (std::size_t a = 0; a < members.size(); ++a) {
      inner.size[a] = level.size[members[a]];
      for (std::size_t b = 0; b < members.size(); ++b)
        inner.w(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
            level.w(static_cast<Eigen::Index>(members[a]), static_cast<Eigen::Index>(members[b]));
    }
    std::vector<int> inner_cluster(members.size());
    std::iota(inner_cluster.begin(), inner_cluster.end(), 0);
    local_moving(inner, resolution, inner_cluster, rng);
    inner_cluster = dense(inner_cluster);
    int local_k = 0;
    for (std::size_t a = 0; a < members.size(); ++a) {
      sub[members[a]] = next_sub + inner_cluster[a];
      local_k = std::max(local_k, inner_cluster[a] + 1);
    }
    next_sub += local_k;
  }
  const auto sub_k = static_cast<std::size_t>(next_sub);
  if (sub_k == m) {
    // No subcluster merged anything: aggregate the clusters themselves.
    sub = cluster;
  }
  const std::size_t levels = sub_k == m ? k : sub_k;
  auto next = aggregate(level, sub, levels);
  std::vector<int> next_cluster(levels, 0);
  for (std::size_t v = 0; v < m; ++v) next_cluster[static_cast<std::size_t>(sub[v])] = cluster[v];
  if (levels < m) smart_local_moving(next, resolution, next_cluster, rng);
  for (std::size_t v = 0; v < m; ++v) cluster[v] = next_cluster[static_cast<std::size_t>(sub[v])];
}

// Moves two members of one cluster jointly to another (possibly empty)
// cluster, or swaps two members of different clusters, whenever that
// improves the objective. This escapes optima where neither node gains by
// moving alone. Returns true if anything moved.
inline bool pair_moving(const Matrix& w, double resolution, std::vector<int>& cluster) {
  const std::size_t n = cluster.size();
  bool any = false;
  bool moved = true;
  while (moved) {
    moved = false;
    cluster = dense(cluster);
    const auto k = static_cast<std::size_t>(*std::max_element(cluster.begin(), cluster.end()) + 1);
    // link(v, c) = sum of w(v, x) over x in c, x != v.
    Matrix link = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(k + 1));
    std::vector<double> size(k + 1, 0.0);
    for (std::size_t v = 0; v < n; ++v) {
      size[static_cast<std::size_t>(cluster[v])] += 1.0;
      for (std::size_t x = 0; x < n; ++x)
        if (x != v) link(static_cast<Eigen::Index>(v), cluster[x]) += w(static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(x));
    }
    for (std::size_t u = 0; u < n && !moved; ++u) {
      for (std::size_t v = u + 1; v < n && !moved; ++v) {
        const auto a = static_cast<Eigen::Index>(cluster[u]);
        const auto ui = static_cast<Eigen::Index>(u), vi = static_cast<Eigen::Index>(v);
        const double uv = w(ui, vi);
        if (cluster[u] != cluster[v]) {
          // Swap u and v between their clusters.
          const auto b = static_cast<Eigen::Index>(cluster[v]);
          const double sa = size[static_cast<std::size_t>(a)], sb = size[static_cast<std::size_t>(b)];
          const double delta = (link(ui, b) - uv - resolution * (sb - 1.0)) - (link(ui, a) - resolution * (sa - 1.0)) +
                               (link(vi, a) - uv - resolution * (sa - 1.0)) - (link(vi, b) - resolution * (sb - 1.0));
          if (delta > 1e-12) {
            std::swap(cluster[u], cluster[v]);
            moved = any = true;
          }
          continue;
        }
        const double stay = link(ui, a) + link(vi, a) - 2.0 * uv - 2.0 * resolution * (size[static_cast<std::size_t>(a)] - 2.0);
        for (std::size_t b = 0; b <= k; ++b) {
          if (static_cast<Eigen::Index>(b) == a) continue;
          const auto bi = static_cast<Eigen::Index>(b);
          const double go = link(ui, bi) + link(vi, bi) - 2.0 * resolution * size[b];
          if (go > stay + 1e-12) {
            cluster[u] = cluster[v] = static_cast<int>(b);
            moved = any = true;
            break;
          }
        }
      }
    }
  }
  return any;
}

}  // namespace detail

struct ClusteringOptions {
  double resolution = 1.0;
  std::uint64_t seed = 1;
  int restarts = 10;
  // Perturb-and-reoptimize rounds per restart.
  int iterations = 10;
  // Probability that a node is reassigned at random in a perturbation.
  double perturbation = 0.3;
};

/// Maximizes sum_{i<j} [c_i == c_j] (s_ij - resolution) by smart local
/// moving (local moving, cluster splitting and aggregation) followed by
/// joint moves of node pairs, then iterated perturbation, from `restarts` seeded node orders; the best restart
/// wins. Groups are numbered by decreasing size.
inline Partition vos_clustering(const SimilarityMatrix& s, const ClusteringOptions& options) {
  if (s.size() == 0) throw Error(Errc::InvalidArgument, "clustering needs at least one category");
  if (!(options.resolution > 0.0)) throw Error(Errc::InvalidArgument, "resolution must be positive");
  detail::ClusterLevel level{s.cells(), std::vector<double>(s.size(), 1.0)};
  level.w.diagonal().setZero();
  std::vector<int> best;
  double best_q = -std::numeric_limits<double>::infinity();
  for (int r = 0; r < std::max(options.restarts, 1); ++r) {
    auto rng = detail::seeded_rng(options.seed, 0x10000ULL + static_cast<std::uint64_t>(r));
    // Restart 0 starts from singletons, later restarts from random partitions.
    std::vector<int> candidate(s.size());
    std::iota(candidate.begin(), candidate.end(), 0);
    if (r > 0) {
      const std::size_t groups = 1 + detail::uniform_index(rng, s.size());
      for (auto& c : candidate) c = static_cast<int>(detail::uniform_index(rng, groups));
    }
    auto optimize = [&](std::vector<int>& c) {
      do detail::smart_local_moving(level, options.resolution, c, rng);
      while (detail::pair_moving(level.w, options.resolution, c));
      return clustering_objective(s, c, options.resolution);
    };
    double q = optimize(candidate);
    // Iterated local search: perturb a random subset of nodes, re-optimize,
    // keep strict improvements.
    for (int it = 0; it < options.iterations; ++it) {
      auto trial = detail::dense(candidate);
      const auto k = static_cast<std::size_t>(*std::max_element(trial.begin(), trial.end()) + 1);
      for (auto& c : trial)
        if (detail::uniform01(rng) < options.perturbation) c = static_cast<int>(detail::uniform_index(rng, std::min(k + 1, s.size())));
      const double next = optimize(trial);
      if (next > q + 1e-12) {
        q = next;
        candidate = std::move(trial);
      }
    }
    if (q > best_q) {
      best_q = q;
      best = std::move(candidate);
    }
  }
  return Partition::compact_by_size(best);
}

inline Partition vos_clustering(const SimilarityMatrix& s, double resolution, std::uint64_t seed) {
  return vos_clustering(s, ClusteringOptions{resolution, seed});
}

// ---------------------------------------------------------------------------
// Base map

struct BaseMapConfig {
  int k_factors = 19;
  double threshold = 0.15;
  double resolution6 = 0.22;
  double resolution4 = 0.08;
  std::uint64_t seed = 1;
  int restarts = 10;

  /// `key=value` lines; `#` starts a comment. Unknown keys are rejected.
  static BaseMapConfig parse(std::istream& in) {
    BaseMapConfig c;
    const auto lines = text::read_lines(in);
    for (std::size_t n = 0; n < lines.size(); ++n) {
      std::string_view line = lines[n];
      if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
      line = text::trim(line);
      if (line.empty()) continue;
      const auto eq = line.find('=');
      if (eq == std::string_view::npos) throw Error(Errc::ParseError, "expected key=value", n + 1);
      const auto key = text::trim(line.substr(0, eq));
      const auto value = text::trim(line.substr(eq + 1));
      auto number = [&] {
        auto v = text::parse_double(value);
        if (!v) throw Error(Errc::ParseError, "'" + std::string(key) + "' needs a number", n + 1);
        return *v;
      };
      auto integer = [&] {
        auto v = text::parse_int(value);
        if (!v) throw Error(Errc::ParseError, "'" + std::string(key) + "' needs an integer", n + 1);
        return *v;
      };
      if (key == "k_factors") c.k_factors = static_cast<int>(integer());
      else if (key == "threshold") c.threshold = number();
      else if (key == "resolution6") c.resolution6 = number();
      else if (key == "resolution4") c.resolution4 = number();
      else if (key == "seed") c.seed = static_cast<std::uint64_t>(integer());
      else if (key == "restarts") c.restarts = static_cast<int>(integer());
      else throw Error(Errc::ParseError, "unknown config key '" + std::string(key) + "'", n + 1);
    }
    c.validate();
    return c;
  }

  void validate() const {
    if (k_factors < 1) throw Error(Errc::InvalidArgument, "k_factors must be >= 1");
    if (!(resolution4 > 0.0) || !(resolution6 > 0.0)) throw Error(Errc::InvalidArgument, "resolutions must be positive");
    if (restarts < 1) throw Error(Errc::InvalidArgument, "restarts must be >= 1");
  }

  std::string to_string() const {
    std::ostringstream out;
    out << "k_factors=" << k_factors << "\nthreshold=" << text::roundtrip(threshold)
        << "\nresolution6=" << text::roundtrip(resolution6) << "\nresolution4=" << text::roundtrip(resolution4)
        << "\nseed=" << seed << "\nrestarts=" << restarts << "\n";
    return out.str();
  }
};

struct BaseMapBuild {
  BaseMap map;
  FactorModel factors;
  LayoutResult layout;
};

inline BaseMapBuild build_base_map(const CitationMatrix& m, RegistryPtr registry, const BaseMapConfig& config = {}) {
  config.validate();
  if (!registry || m.size() != registry->size())
    throw Error(Errc::DimensionMismatch, "citation matrix is not bound to the registry");
  const std::size_t n = m.size();

  BaseMapBuild out;
  auto s = cosine_similarity(m);
  out.factors = factor_analysis(s.cells(), std::min<int>(config.k_factors, static_cast<int>(n)));
  out.map.partition19 = out.factors.assignment;
  out.map.partition6 = vos_clustering(s, {config.resolution6, config.seed, config.restarts});
  out.map.partition4 = vos_clustering(s, {config.resolution4, config.seed, config.restarts});
  if (n >= 2) {
    out.layout = vos_layout(s, {config.seed, config.restarts});
    out.map.coords = out.layout.coords;
  } else {
    out.map.coords = {Point2{}};
  }

  Eigen::VectorXd sums = m.cells().rowwise().sum();
  const double max_sum = sums.size() ? sums.maxCoeff() : 0.0;
  out.map.weights.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    out.map.weights[i] = max_sum > 0.0 ? sums(static_cast<Eigen::Index>(i)) / max_sum : 0.0;

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (s(i, j) > 0.0 && s(i, j) >= config.threshold)
        out.map.edges.push_back({CategoryId::from_index(i), CategoryId::from_index(j), s(i, j)});

  out.map.registry = std::move(registry);
  out.map.similarity = std::move(s);
  return out;
}

}  // namespace scimap
