#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "scimap/diversity.hpp"

namespace scimap {
namespace {

struct Instance {
  std::vector<double> p;
  Matrix d;
};

Instance random_instance(std::mt19937_64& rng, std::size_t n, double density = 0.5) {
  Instance in;
  const auto ni = static_cast<Eigen::Index>(n);
  in.d = Matrix::Zero(ni, ni);
  for (Eigen::Index i = 0; i < ni; ++i)
    for (Eigen::Index j = i + 1; j < ni; ++j) in.d(i, j) = in.d(j, i) = rng() % 10 == 0 ? 0.0 : oracle::uniform(rng);
  in.p.assign(n, 0.0);
  for (auto& v : in.p)
    if (oracle::uniform(rng) < density) v = oracle::uniform(rng);
  in.p[rng() % n] += 0.5;
  const double total = std::accumulate(in.p.begin(), in.p.end(), 0.0);
  for (auto& v : in.p) v /= total;
  return in;
}

TEST(RaoStirling, SingleCategoryIsZero) {
  Matrix d = Matrix::Zero(1, 1);
  EXPECT_EQ(rao_stirling(DiversityInput({1.0}, d)), 0.0);
}

TEST(RaoStirling, TwoEqualCategories) {
  Matrix d(2, 2);
  d << 0, 0.4, 0.4, 0;
  const double expected = oracle::rao_stirling({0.5, 0.5}, d);
  EXPECT_DOUBLE_EQ(expected, 0.2);
  EXPECT_DOUBLE_EQ(rao_stirling(DiversityInput({0.5, 0.5}, d)), expected);
}

TEST(RaoStirling, ConcentratedOverlayInLargeMapIsZero) {
  std::mt19937_64 rng(1);
  auto in = random_instance(rng, 50);
  std::vector<double> p(50, 0.0);
  p[17] = 1.0;
  EXPECT_EQ(rao_stirling(DiversityInput(p, in.d)), 0.0);
}

TEST(RaoStirling, MatchesOracleAndBounds) {
  std::mt19937_64 rng(2012);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng() % 120;
    auto in = random_instance(rng, n, oracle::uniform(rng));
    const DiversityInput input(in.p, in.d);
    const double got = rao_stirling(input);
    EXPECT_NEAR(got, oracle::rao_stirling(in.p, in.d), 1e-12);
    EXPECT_GE(got, 0.0);
    EXPECT_LE(got, gini_simpson(in.p) + 1e-12);
    const double alpha = oracle::uniform(rng, 0, 2), beta = oracle::uniform(rng, 0, 2);
    // Exponents below 1 can push the sum well above 1; compare relatively.
    const double general = oracle::rao_stirling(in.p, in.d, alpha, beta);
    EXPECT_NEAR(rao_stirling(input, alpha, beta), general, 1e-12 * std::max(1.0, general));
  }
}

TEST(RaoStirling, PermutationInvariant) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 3 + rng() % 40;
    auto in = random_instance(rng, n);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<double> p(n);
    Matrix d(in.d.rows(), in.d.cols());
    for (std::size_t i = 0; i < n; ++i) {
      p[i] = in.p[perm[i]];
      for (std::size_t j = 0; j < n; ++j)
        d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
            in.d(static_cast<Eigen::Index>(perm[i]), static_cast<Eigen::Index>(perm[j]));
    }
    EXPECT_NEAR(rao_stirling(DiversityInput(p, d)), rao_stirling(DiversityInput(in.p, in.d)), 1e-12);
  }
}

TEST(RaoStirling, ZeroExponentsCountOrderedPairs) {
  // Four nonzero categories, all distances nonzero: 4 * 3 ordered pairs.
  Matrix d = Matrix::Constant(6, 6, 0.3);
  d.diagonal().setZero();
  std::vector<double> p = {0.1, 0.0, 0.4, 0.2, 0.0, 0.3};
  EXPECT_DOUBLE_EQ(rao_stirling(DiversityInput(p, d), 0.0, 0.0), 12.0);
}

TEST(RaoStirling, RejectsNegativeExponents) {
  Matrix d = Matrix::Zero(1, 1);
  EXPECT_THROW(rao_stirling(DiversityInput({1.0}, d), -1.0, 1.0), Error);
}

}  // namespace
}  // namespace scimap
