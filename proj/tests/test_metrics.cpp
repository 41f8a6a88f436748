#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "rvcal/error.hpp"
#include "rvcal/metrics.hpp"
#include "rvcal/offline.hpp"
#include "rvcal/rng.hpp"

namespace rvcal {
namespace {

TEST(Metrics, Rmse) {
  EXPECT_DOUBLE_EQ(rmse(std::vector<double>{3, 4}), std::sqrt(12.5));
  EXPECT_THROW(rmse(std::vector<double>{}), Error);
}

TEST(Metrics, AverageRanks) {
  EXPECT_EQ(average_ranks(std::vector<double>{1, 1, 2}), (std::vector<double>{1.5, 1.5, 3}));
  EXPECT_EQ(average_ranks(std::vector<double>{5, 2, 5, 5}), (std::vector<double>{3, 1, 3, 3}));
}

TEST(Metrics, SpearmanExtremes) {
  const std::vector<double> a{1, 2, 3};
  EXPECT_DOUBLE_EQ(spearman_rho(a, std::vector<double>{1, 2, 3}), 1.0);
  EXPECT_DOUBLE_EQ(spearman_rho(a, std::vector<double>{3, 2, 1}), -1.0);
  // Monotone but nonlinear still gives 1.
  EXPECT_DOUBLE_EQ(spearman_rho(std::vector<double>{0.1, 5, 2, 9}, std::vector<double>{1, 125, 8, 729}), 1.0);
  EXPECT_EQ(spearman_rho(a, std::vector<double>{2, 2, 2}), 0.0);
  EXPECT_THROW(spearman_rho(a, std::vector<double>{1, 2}), Error);
  EXPECT_THROW(spearman_rho(std::vector<double>{}, std::vector<double>{}), Error);
}

TEST(Metrics, SpearmanWithoutTiesMatchesClosedForm) {
  // rho = 1 - 6 sum d^2 / (n (n^2 - 1)) for distinct values.
  Rng rng(31);
  std::vector<double> a(50), b(50);
  for (std::size_t i = 0; i < a.size(); ++i) {
    a[i] = rng.uniform();
    b[i] = a[i] + rng.normal() * 0.3;
  }
  const auto ra = average_ranks(a), rb = average_ranks(b);
  double d2 = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d2 += (ra[i] - rb[i]) * (ra[i] - rb[i]);
  const double n = 50.0;
  EXPECT_NEAR(spearman_rho(a, b), 1.0 - 6.0 * d2 / (n * (n * n - 1.0)), 1e-12);
}

TEST(Metrics, IndependentUtilityHasNoCorrelation) {
  Rng rng(2024);
  const std::size_t n = 10000;
  std::vector<double> err(n), util(n);
  for (std::size_t i = 0; i < n; ++i) {
    err[i] = std::abs(rng.normal());
    util[i] = rng.uniform();
  }
  EXPECT_LT(std::abs(spearman_rho(util, err)), 0.05);
  EXPECT_DOUBLE_EQ(spearman_rho(err, err), 1.0);
}

TEST(Metrics, PercentileRank) {
  EXPECT_EQ(percentile_rank(std::vector<double>{10, 30, 20}), (std::vector<double>{0, 100, 50}));
  EXPECT_EQ(percentile_rank(std::vector<double>{7}), (std::vector<double>{50}));
  for (double p : percentile_rank(std::vector<double>{1, 1, 1, 4})) {
    EXPECT_GE(p, 0.0);
    EXPECT_LE(p, 100.0);
  }
}

TEST(Metrics, BinnedStats) {
  std::vector<double> pct, val;
  for (int i = 0; i <= 100; ++i) {
    pct.push_back(i);
    val.push_back(i % 2 == 0 ? 1.0 : 3.0);
  }
  const auto bins = binned_stats(pct, val, 10);
  ASSERT_EQ(bins.size(), 10u);
  std::size_t total = 0;
  for (std::size_t b = 0; b < 10; ++b) {
    EXPECT_DOUBLE_EQ(bins[b].lower, 10.0 * static_cast<double>(b));
    EXPECT_DOUBLE_EQ(bins[b].upper, 10.0 * static_cast<double>(b + 1));
    total += bins[b].count;
  }
  EXPECT_EQ(total, 101u);
  EXPECT_EQ(bins[9].count, 11u);  // 100 lands in the closed last bin
  EXPECT_DOUBLE_EQ(bins[0].mean, 2.0);
  EXPECT_DOUBLE_EQ(bins[0].stddev, 1.0);

  const auto sparse = binned_stats(std::vector<double>{5.0}, std::vector<double>{2.0}, 10);
  EXPECT_EQ(sparse[3].count, 0u);
  EXPECT_EQ(sparse[3].mean, 0.0);
  EXPECT_EQ(sparse[0].count, 1u);
}

TEST(Offline, SequentialFolds) {
  const auto folds = sequential_folds(20, 5);
  ASSERT_EQ(folds.size(), 5u);
  for (std::size_t f = 0; f < 5; ++f) {
    EXPECT_EQ(folds[f].first, 4 * f);
    EXPECT_EQ(folds[f].second, 4 * f + 4);
  }
  const auto uneven = sequential_folds(23, 5);
  EXPECT_EQ(uneven.front().first, 0u);
  EXPECT_EQ(uneven.back().second, 23u);
  for (std::size_t f = 1; f < 5; ++f) EXPECT_EQ(uneven[f].first, uneven[f - 1].second);
}

}  // namespace
}  // namespace rvcal
