#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "scimap/core.hpp"

namespace scimap {

struct SizeScale {
  double min = 2.0;
  double max = 40.0;
};

/// A base map with one display size per category; zero-count categories
/// have size 0 and are hidden.
struct OverlayMap {
  BaseMap base;
  OverlayVector overlay;
  std::vector<double> sizes;

  bool visible(std::size_t i) const { return sizes[i] > 0.0; }
};

/// size_i = min + (max - min) * sqrt(p_i / max_j p_j), so node area tracks
/// the proportion.
inline OverlayMap project(const BaseMap& base, const OverlayVector& ov, SizeScale scale = {}) {
  if (!base.registry || !ov.registry() || !(*base.registry == *ov.registry()))
    throw Error(Errc::RegistryMismatch, "overlay was built against a different registry");
  if (!(scale.min >= 0.0) || !(scale.max >= scale.min))
    throw Error(Errc::InvalidArgument, "size scale needs 0 <= min <= max");
  const auto& p = ov.proportions();
  const double top = p.empty() ? 0.0 : *std::max_element(p.begin(), p.end());
  OverlayMap out{base, ov, std::vector<double>(p.size(), 0.0)};
  if (top <= 0.0) return out;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (ov.counts()[i] > 0) out.sizes[i] = scale.min + (scale.max - scale.min) * std::sqrt(p[i] / top);
  return out;
}

}  // namespace scimap
