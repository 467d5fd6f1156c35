#pragma once

// Random base maps and overlays for format fuzzing.

#include <memory>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "scimap/core.hpp"

namespace fixture {

inline std::string random_label(std::mt19937_64& rng, std::size_t index) {
  static const std::vector<std::string> words = {"Mathematics", "Applied", "Physics", "&", "and", "Science",
                                                 ",", "\"Quoted\"", "O'Brien", "<Bio>", "Studies", "Zoology"};
  std::string label = "L" + std::to_string(index);
  const std::size_t count = rng() % 4;
  for (std::size_t w = 0; w < count; ++w) label += " " + words[rng() % words.size()];
  return label;
}

inline scimap::Partition random_partition(std::mt19937_64& rng, std::size_t n, int max_k) {
  std::vector<int> raw(n);
  for (auto& g : raw) g = static_cast<int>(rng() % static_cast<std::uint64_t>(max_k));
  return scimap::Partition::compact(raw);
}

inline scimap::BaseMap random_base_map(std::mt19937_64& rng, std::size_t n) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back(random_label(rng, i));
  scimap::BaseMap base;
  base.registry = std::make_shared<const scimap::CategoryRegistry>(labels);
  for (std::size_t i = 0; i < n; ++i) base.coords.push_back({oracle::uniform(rng, -3, 3), oracle::uniform(rng, -3, 3)});
  base.partition19 = random_partition(rng, n, 19);
  base.partition6 = random_partition(rng, n, 6);
  base.partition4 = random_partition(rng, n, 4);
  for (std::size_t i = 0; i < n; ++i) base.weights.push_back(oracle::uniform(rng));
  const auto ni = static_cast<Eigen::Index>(n);
  scimap::Matrix s = scimap::Matrix::Identity(ni, ni);
  for (Eigen::Index i = 0; i < ni; ++i)
    for (Eigen::Index j = i + 1; j < ni; ++j) {
      s(i, j) = s(j, i) = oracle::uniform(rng);
      if (s(i, j) >= 0.5)
        base.edges.push_back({scimap::CategoryId::from_index(static_cast<std::size_t>(i)),
                              scimap::CategoryId::from_index(static_cast<std::size_t>(j)), s(i, j)});
    }
  base.similarity = scimap::SimilarityMatrix(s);
  return base;
}

inline scimap::OverlayVector random_overlay(std::mt19937_64& rng, const scimap::RegistryPtr& registry) {
  std::vector<long long> counts(registry->size(), 0);
  for (auto& c : counts)
    if (rng() % 3 == 0) c = static_cast<long long>(rng() % 1000);
  counts[rng() % counts.size()] += 1;
  return scimap::OverlayVector(registry, counts);
}

}  // namespace fixture
