#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "rvcal/budget.hpp"
#include "rvcal/rng.hpp"

namespace rvcal {
namespace {

TEST(VarUn, AcquireBranch) {
  VarUnState s;  // theta 1, spent 0, step 0.01, window 256
  EXPECT_TRUE(varun_decide(s, 0.5, 0.2));
  EXPECT_EQ(s.theta, 1.0 * (1.0 - 0.01));
  EXPECT_EQ(s.spent, 1.0 / 256.0);
}

TEST(VarUn, SkipBranchWidensRegion) {
  VarUnState s;
  s.theta = 0.3;
  EXPECT_FALSE(varun_decide(s, 0.5, 0.2));
  EXPECT_EQ(s.theta, 0.3 * (1.0 + 0.01));
  EXPECT_EQ(s.spent, 0.0);
}

TEST(VarUn, OverBudgetSkipsWithoutTouchingTheta) {
  for (double u : {0.0, 0.5, 0.999}) {
    VarUnState s;
    s.spent = 0.25;
    EXPECT_FALSE(varun_decide(s, u, 0.2));
    EXPECT_EQ(s.theta, 1.0);
    EXPECT_EQ(s.spent, (255.0 * 0.25) / 256.0);
  }
}

TEST(Split, HighEtaDelegatesToVarUn) {
  VarUnState a, b;
  a.theta = b.theta = 0.7;
  Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    const double u = rng.uniform();
    ASSERT_EQ(split_decide(a, u, 0.2, 0.5, 0.9, 0.01), varun_decide(b, u, 0.2));
    ASSERT_EQ(a.theta, b.theta);
    ASSERT_EQ(a.spent, b.spent);
  }
}

TEST(Split, RandomBranch) {
  VarUnState s;
  s.theta = 0.4;
  EXPECT_TRUE(split_decide(s, 0.0, 0.2, 0.5, 0.1, 0.05));
  EXPECT_EQ(s.theta, 0.4);
  EXPECT_EQ(s.spent, 1.0 / 256.0);

  VarUnState over;
  over.spent = 0.3;
  EXPECT_FALSE(split_decide(over, 1.0, 0.2, 0.5, 0.1, 0.0));
  EXPECT_EQ(over.spent, 255.0 * 0.3 / 256.0);
}

TEST(Random, Examples) {
  SpendingState s;
  EXPECT_TRUE(random_decide(s, 0.95, 0.1));
  SpendingState t;
  EXPECT_FALSE(random_decide(t, 0.5, 0.1));
  SpendingState gated;
  gated.spent = 0.5;
  EXPECT_FALSE(random_decide(gated, 0.99, 0.1));
  gated.gate = false;
  EXPECT_TRUE(random_decide(gated, 0.99, 0.1));
}

TEST(Random, LabelFractionNearBudget) {
  // 99% binomial interval for 2000 draws at b = 0.2 is about +/- 0.023; the
  // spending gate pulls the rate slightly below b.
  BudgetManager m({BudgetKind::Random}, Rng(0));
  Rng rng(13);
  int acquired = 0;
  for (int i = 0; i < 2000; ++i) acquired += m.decide(rng.uniform(), 0.2) ? 1 : 0;
  EXPECT_NEAR(acquired / 2000.0, 0.2, 0.03);
}

TEST(Quantile, InclusiveInterpolation) {
  EXPECT_EQ(inclusive_quantile(std::vector<double>{3.0}, 0.9), 3.0);
  EXPECT_DOUBLE_EQ(inclusive_quantile(std::vector<double>{1, 2, 3, 4}, 0.5), 2.5);
  EXPECT_DOUBLE_EQ(inclusive_quantile(std::vector<double>{4, 1, 3, 2}, 1.0), 4.0);
  EXPECT_DOUBLE_EQ(inclusive_quantile(std::vector<double>{4, 1, 3, 2}, 0.0), 1.0);
  std::vector<double> hundred(100);
  std::iota(hundred.begin(), hundred.end(), 1.0);
  EXPECT_DOUBLE_EQ(inclusive_quantile(hundred, 0.9), 90.1);
}

TEST(Quantile, FirstSampleIsAcquired) {
  QuantileFilterState s;
  EXPECT_TRUE(quantile_decide(s, 12.5, 0.1));
  EXPECT_EQ(s.threshold, 12.5);
}

TEST(Quantile, SpendingGateBlocks) {
  QuantileFilterState s;
  s.spent = 0.2;
  EXPECT_FALSE(quantile_decide(s, 1e9, 0.1));
  EXPECT_EQ(s.spent, 255.0 * 0.2 / 256.0);
}

TEST(Quantile, HighUtilityAboveNinetiethPercentile) {
  QuantileFilterState s;
  for (int i = 1; i <= 100; ++i) s.buffer.push_back(i);
  EXPECT_TRUE(quantile_decide(s, 99.5, 0.1));
  // Direct computation on the 101 buffered values.
  std::vector<double> v(s.buffer.begin(), s.buffer.end());
  EXPECT_DOUBLE_EQ(s.threshold, inclusive_quantile(v, 0.9));
  EXPECT_LT(s.threshold, 99.5);
}

TEST(Quantile, LabelsTopFractionOfADistinctBuffer) {
  // Rank property: with a full buffer of distinct values, exactly
  // m - ceil((m - 1)(1 - b)) of them clear the (1 - b) quantile.
  Rng rng(21);
  for (double b : {0.05, 0.1, 0.2, 0.4}) {
    std::vector<double> values(256);
    std::iota(values.begin(), values.end(), 0.0);
    for (std::size_t i = values.size() - 1; i > 0; --i) std::swap(values[i], values[rng.index(i + 1)]);
    const double q = inclusive_quantile(values, 1.0 - b);
    std::size_t above = 0;
    for (double v : values) above += v >= q ? 1 : 0;
    const auto expected = 256 - static_cast<std::size_t>(std::ceil(255.0 * (1.0 - b) - 1e-9));
    EXPECT_EQ(above, expected) << "b=" << b;
  }
}

TEST(Quantile, StationaryLabelFraction) {
  BudgetManager m({BudgetKind::QuantileFilter}, Rng(0));
  Rng rng(5);
  int acquired = 0;
  for (int i = 0; i < 2000; ++i) acquired += m.decide(rng.exponential() * 3.0, 0.2) ? 1 : 0;
  EXPECT_NEAR(acquired / 2000.0, 0.2, 0.05);
}

TEST(Spending, ClosedFormMatchesRecursion) {
  Rng rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t w = 1 + rng.index(300);
    const std::size_t t = 1 + rng.index(200);
    std::vector<bool> lambda(t);
    for (std::size_t i = 0; i < t; ++i) lambda[i] = rng.uniform() < 0.3;
    double spent = 0.0;
    for (bool l : lambda) spent = update_spending(spent, l, w);
    // sum_i lambda_i ((w-1)/w)^(t-i) / w, i 1-based.
    double closed = 0.0;
    const double wd = static_cast<double>(w);
    for (std::size_t i = 1; i <= t; ++i) {
      if (lambda[i - 1]) closed += std::pow((wd - 1.0) / wd, static_cast<double>(t - i)) / wd;
    }
    EXPECT_NEAR(spent, closed, 1e-15 * static_cast<double>(t));
  }
}

TEST(VarUn, InvariantsAndBudgetCompliance) {
  for (double b : {0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4}) {
    BudgetManager m({BudgetKind::VarUn}, Rng(0));
    Rng rng(static_cast<std::uint64_t>(b * 1000));
    int acquired = 0;
    for (int i = 0; i < 2000; ++i) {
      acquired += m.decide(rng.uniform(), b) ? 1 : 0;
      ASSERT_GT(m.threshold(), 0.0);
      ASSERT_GE(m.spent(), 0.0);
      ASSERT_LE(m.spent(), 1.0);
    }
    EXPECT_NEAR(acquired / 2000.0, b, 0.05) << "b=" << b;
  }
}

TEST(VarUn, TraceIsDeterministic) {
  auto trace = [] {
    BudgetManager m({BudgetKind::Split}, Rng(17));
    Rng rng(4);
    std::vector<double> out;
    for (int i = 0; i < 500; ++i) {
      out.push_back(m.decide(rng.uniform(), 0.15) ? 1.0 : 0.0);
      out.push_back(m.threshold());
      out.push_back(m.spent());
    }
    return out;
  };
  EXPECT_EQ(trace(), trace());
}

}  // namespace
}  // namespace rvcal
