#include "iw/schedule.hpp"

#include <gtest/gtest.h>

#include <functional>

using namespace iw;

namespace {

// Exhaustive multiset search for the condition (iii) sum, independent of the knapsack.
BigInt brute_condition_sum(const Schedule& s, Level j) {
  BigInt bound = s.m_at(j + 1) * s.m_at(j + 1);
  BigInt best = 0;
  std::function<void(Level, BigInt, BigInt)> rec = [&](Level from, BigInt prod, BigInt sum) {
    if (sum > best) best = sum;
    for (Level i = from; i <= j; ++i) {
      BigInt p = prod * s.m_at(i);
      if (p < bound) rec(i, p, sum + s.n_at(i));
    }
  };
  rec(1, 1, 0);
  return best;
}

}  // namespace

TEST(Schedule, DefaultShape) {
  auto s1 = default_schedule(1);
  EXPECT_EQ(s1.m, (std::vector<BigInt>{2}));
  EXPECT_EQ(s1.n, (std::vector<BigInt>{1}));
  auto s2 = default_schedule(2);
  EXPECT_EQ(s2.m, (std::vector<BigInt>{2, 4}));
  EXPECT_EQ(s2.n, (std::vector<BigInt>{1, 5}));
  EXPECT_THROW(default_schedule(0), std::invalid_argument);
}

TEST(Schedule, ThirdLevelFromExhaustiveSearch) {
  auto s = default_schedule(3);
  EXPECT_EQ(s.m, (std::vector<BigInt>{2, 4, 16}));
  // products below 16^2 = 2^8: three copies of m_2 and one m_1 give 5+5+5+1
  BigInt sum = brute_condition_sum(s, 2);
  EXPECT_EQ(sum, 16);
  EXPECT_EQ(s.n[2], sum + 2);
}

TEST(Schedule, ConditionSumMatchesBruteForce) {
  auto s = default_schedule(4);
  for (Level j = 1; j < 3; ++j) EXPECT_EQ(max_condition_sum(s, j), brute_condition_sum(s, j)) << j;
  EXPECT_EQ(max_condition_sum(s, 1), 3);
  EXPECT_EQ(max_condition_sum(s, 2), 16);
  Schedule t{{2, 4}, {1, 100}};
  EXPECT_EQ(max_condition_sum(t, 1), 3);
  EXPECT_THROW(max_condition_sum(t, 2), LevelOutOfHorizon);
}

TEST(Schedule, GeneralWeightsUseMultisetSearch) {
  Schedule s{{2, 5, 40}, {1, 6, 40}};
  for (Level j = 1; j <= 2; ++j) EXPECT_EQ(max_condition_sum(s, j), brute_condition_sum(s, j));
}

TEST(Schedule, ConditionSumMonotone) {
  auto s = default_schedule(6);
  BigInt prev = 0;
  for (Level j = 1; j < 6; ++j) {
    BigInt v = max_condition_sum(s, j);
    EXPECT_GE(v, prev);
    prev = v;
  }
}

TEST(Schedule, DefaultPassesValidation) {
  for (std::size_t J = 1; J <= 6; ++J) {
    auto r = validate(default_schedule(J));
    EXPECT_TRUE(r.ok()) << J;
    EXPECT_FALSE(r.notes.empty());
  }
}

TEST(Schedule, BrokenSchedulesRejected) {
  auto r = validate(Schedule{{2, 4}, {1, 2}});
  ASSERT_FALSE(r.ok());
  EXPECT_EQ(r.violations[0].condition, "(iii)");

  auto r2 = validate(Schedule{{2, 2}, {1, 5}});
  ASSERT_FALSE(r2.ok());
  EXPECT_EQ(r2.violations[0].condition, "monotone");

  auto r3 = validate(Schedule{{3, 4}, {1, 5}});
  EXPECT_FALSE(r3.ok());

  // m_j / m_{j+1}: 2/4 then 4/8 does not decrease
  auto r4 = validate(Schedule{{2, 4, 8}, {1, 5, 30}});
  ASSERT_FALSE(r4.ok());
  EXPECT_EQ(r4.violations[0].condition, "(ii)");
}

TEST(Schedule, LevelsOutsideHorizonThrow) {
  auto s = default_schedule(3);
  EXPECT_THROW(s.m_at(4), LevelOutOfHorizon);
  EXPECT_THROW(s.n_at(0), LevelOutOfHorizon);
}

TEST(Schedule, WeightOpsCoverEveryProduct) {
  auto s = default_schedule(4);
  auto ops = weight_ops(s, 300, false);
  // powers 2^1 .. 2^8 are all products of m_1, m_2, m_3
  ASSERT_EQ(ops.size(), 8u);
  for (std::size_t i = 0; i < ops.size(); ++i) {
    EXPECT_EQ(ops[i].weight, pow2(i + 1));
    BigInt w = 1, n = 0;
    for (Level j : ops[i].vw) {
      w *= s.m_at(j);
      n += s.n_at(j);
    }
    EXPECT_EQ(w, ops[i].weight);
    EXPECT_EQ(n, ops[i].n);
  }
  // weight 8: (1,2) gives 1 + 5 = 6, better than (1,1,1)
  EXPECT_EQ(ops[2].n, 6);
  auto single = weight_ops(s, 300, true);
  ASSERT_EQ(single.size(), 4u);
  EXPECT_EQ(single[3].weight, 256);
  auto exact = weight_op_exact(s, 16, false);
  ASSERT_TRUE(exact.has_value());
  EXPECT_EQ(exact->n, s.n_at(3));
  EXPECT_FALSE(weight_op_exact(s, 12, false).has_value());
}

TEST(Schedule, WeightOpsGeneral) {
  Schedule s{{2, 5, 40}, {1, 6, 40}};
  auto ops = weight_ops(s, 41, false);
  std::vector<BigInt> ws;
  for (auto& o : ops) ws.push_back(o.weight);
  EXPECT_EQ(ws, (std::vector<BigInt>{2, 4, 5, 8, 10, 16, 20, 25, 32, 40}));
  for (auto& o : ops) {
    if (o.weight == 40) {
      EXPECT_EQ(o.n, 40);  // the single level beats 2*2*2*5 (1+1+1+6)
    }
  }
}
