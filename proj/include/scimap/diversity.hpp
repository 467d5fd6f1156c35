#pragma once

#include <cmath>
#include <vector>

#include "scimap/core.hpp"

namespace scimap {

/// Rao-Stirling diversity over ordered pairs:
///
///   sum_{i != j} (p_i p_j)^alpha * d_ij^beta
///
/// Pairs with p_i p_j = 0 or d_ij = 0 contribute nothing, including when an
/// exponent is zero. With alpha = beta = 1 every unordered pair is counted
/// twice; halve the result for the unordered convention.
inline double rao_stirling(const DiversityInput& input, double alpha = 1.0, double beta = 1.0) {
  if (!(alpha >= 0.0) || !(beta >= 0.0)) throw Error(Errc::InvalidArgument, "alpha and beta must be >= 0");
  const auto& p = input.p();
  const auto& d = input.d();
  std::vector<Eigen::Index> support;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] > 0.0) support.push_back(static_cast<Eigen::Index>(i));

  const bool linear = alpha == 1.0 && beta == 1.0;
  double sum = 0.0;
  for (std::size_t a = 0; a < support.size(); ++a) {
    const auto i = support[a];
    const double pi = p[static_cast<std::size_t>(i)];
    double row = 0.0;
    for (std::size_t b = a + 1; b < support.size(); ++b) {
      const auto j = support[b];
      const double dij = d(i, j);
      if (dij == 0.0) continue;
      const double pj = p[static_cast<std::size_t>(j)];
      row += linear ? pj * dij : std::pow(pi * pj, alpha) * std::pow(dij, beta);
    }
    sum += linear ? pi * row : row;
  }
  return 2.0 * sum;
}

/// Upper bound for alpha = beta = 1 and distances in [0, 1].
inline double gini_simpson(const std::vector<double>& p) {
  double s = 0.0;
  for (double v : p) s += v * v;
  return 1.0 - s;
}

}  // namespace scimap
