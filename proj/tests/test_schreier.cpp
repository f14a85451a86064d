#include "iw/schreier.hpp"
#include "oracles/schreier_oracle.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace iw;

TEST(SchreierMember, SmallCases) {
  EXPECT_TRUE(s_member(FinSet{2, 3}, 1));
  EXPECT_FALSE(s_member(FinSet{1, 2}, 1));
  for (int n = 1; n <= 10; ++n) EXPECT_FALSE(s_member(FinSet{1, 2}, n));
  EXPECT_TRUE(s_member(FinSet{2, 3, 10, 11, 12}, 2));
  EXPECT_TRUE(s_member(FinSet{}, 0));
  EXPECT_TRUE(s_member(FinSet{1}, 5));
  EXPECT_FALSE(s_member(FinSet{3, 4}, 0));
}

TEST(SchreierMember, HugeIndexUsesShortcut) {
  BigInt huge = pow2(4000);
  EXPECT_TRUE(s_member(FinSet{2, 3, 4, 5, 6, 7, 8, 9, 10}, huge));
  EXPECT_FALSE(s_member(FinSet{1, 3}, huge));
}

TEST(SchreierMember, MatchesRecursiveDefinition) {
  oracle::SchreierOracle o;
  for (const auto& F : oracle::all_subsets(1, 10))
    for (unsigned n = 0; n <= 4; ++n) ASSERT_EQ(s_member(F, n), o.member(F.elems(), n)) << "n=" << n;
}

TEST(SchreierMember, ShortcutNeverContradictsRecursion) {
  oracle::SchreierOracle o;
  for (const auto& F : oracle::all_subsets(2, 10))
    for (unsigned n = 0; n <= 6; ++n) {
      if (!F.empty() && n >= 1 + ceil_log2(F.size())) {
        ASSERT_TRUE(o.member(F.elems(), n));
      }
    }
}

TEST(SchreierMember, Hereditary) {
  for (const auto& F : oracle::all_subsets(1, 10))
    for (unsigned n = 0; n <= 4; ++n) {
      if (!s_member(F, n)) continue;
      for (std::size_t drop = 0; drop < F.size(); ++drop) {
        std::vector<Pos> g;
        for (std::size_t i = 0; i < F.size(); ++i)
          if (i != drop) g.push_back(F[i]);
        ASSERT_TRUE(s_member(FinSet(g), n));
      }
    }
}

TEST(SchreierMember, Spreading) {
  // shifting one element right (keeping order) preserves membership
  for (const auto& F : oracle::all_subsets(1, 11))
    for (unsigned n = 0; n <= 3; ++n) {
      if (!s_member(F, n)) continue;
      for (std::size_t i = 0; i < F.size(); ++i) {
        Pos next = i + 1 < F.size() ? F[i + 1] : 13;
        for (Pos q = F[i] + 1; q < next; ++q) {
          std::vector<Pos> g = F.elems();
          g[i] = q;
          ASSERT_TRUE(s_member(FinSet(g), n));
        }
      }
    }
}

TEST(SchreierFamily, Cases) {
  EXPECT_TRUE(family_member(FinSet{4, 5, 6}, Family::A(3)));
  EXPECT_FALSE(family_member(FinSet{4, 5, 6, 7}, Family::A(3)));
  EXPECT_TRUE(family_member(FinSet{2, 3, 4, 10, 11, 12}, Family::Star(Family::S(1), Family::A(3))));
  EXPECT_TRUE(family_member(FinSet{}, Family::Star(Family::S(0), Family::A(1))));
  EXPECT_TRUE(family_member(FinSet{}, Family::A(0)));
}

TEST(SchreierFamily, ProductIdentity) {
  oracle::SchreierOracle o;
  for (const auto& F : oracle::all_subsets(1, 10))
    for (unsigned n = 0; n <= 3; ++n)
      for (unsigned m = 0; n + m <= 3; ++m) {
        Family star = Family::Star(Family::S(n), Family::S(m));
        ASSERT_EQ(o.family(F.elems(), star), s_member(F, n + m));
        ASSERT_EQ(family_member(F, star), s_member(F, n + m));
      }
}

TEST(SchreierFamily, SchreierTimesCardinalityMatchesOracle) {
  oracle::SchreierOracle o;
  for (const auto& F : oracle::all_subsets(1, 10))
    for (unsigned n = 0; n <= 3; ++n)
      for (unsigned m = 1; m <= 3; ++m) {
        Family fam = Family::Star(Family::S(n), Family::A(m));
        ASSERT_EQ(family_member(F, fam), o.family(F.elems(), fam)) << fam.describe();
      }
}

TEST(SchreierMinPieces, Examples) {
  EXPECT_EQ(min_pieces(FinSet{2, 3}, 1), 1u);
  EXPECT_EQ(min_pieces(FinSet{1, 2, 3}, 1), 2u);
  EXPECT_EQ(min_pieces(FinSet{2, 3, 4, 5}, 1), 2u);
  EXPECT_THROW(min_pieces(FinSet{}, 1), std::invalid_argument);
}

TEST(SchreierMinPieces, GreedyIsOptimal) {
  oracle::SchreierOracle o;
  for (const auto& F : oracle::all_subsets(1, 9)) {
    if (F.empty()) continue;
    for (unsigned n = 0; n <= 3; ++n) ASSERT_EQ(min_pieces(F, n), o.min_pieces(F.elems(), n));
  }
}

TEST(SchreierAdmissible, Examples) {
  EXPECT_TRUE(is_admissible(FinSet{2, 3}, Family::S(1)));
  EXPECT_FALSE(is_admissible(FinSet{1, 5}, Family::S(1)));
  EXPECT_TRUE(is_admissible(FinSet{3, 7, 8}, Family::S(1)));
  EXPECT_TRUE(is_admissible(FinSet{}, Family::S(0)));
}

TEST(SchreierMaximalSet, Examples) {
  std::vector<Pos> g;
  for (Pos p = 3; p <= 20; ++p) g.push_back(p);
  EXPECT_EQ(maximal_set(g, 1), (FinSet{3, 4, 5}));
  std::vector<Pos> g2{2, 3, 4};
  EXPECT_EQ(maximal_set(g2, 0), (FinSet{2}));
  EXPECT_THROW(maximal_set(std::vector<Pos>{3, 4}, 1), GroundTooShort);
  EXPECT_THROW(maximal_set(std::vector<Pos>{}, 1), GroundTooShort);
}

TEST(SchreierMaximalSet, SecondLevelIsMaximal) {
  std::vector<Pos> g;
  for (Pos p = 2; p <= 40; ++p) g.push_back(p);
  FinSet F = maximal_set(g, 2);
  // S_1 blocks {2,3} and {4,5,6,7}; the minimum 2 allows no third block
  EXPECT_EQ(F, (FinSet{2, 3, 4, 5, 6, 7}));
  oracle::SchreierOracle o;
  EXPECT_TRUE(o.member(F.elems(), 2));
  std::vector<Pos> more = F.elems();
  more.push_back(8);
  EXPECT_FALSE(o.member(more, 2));
}

TEST(SchreierMaximalSet, MaximalAgainstOracle) {
  oracle::SchreierOracle o;
  for (Pos start = 2; start <= 5; ++start)
    for (unsigned n = 0; n <= 3; ++n) {
      if (n == 3 && start > 2) continue;  // maximal S_3 sets from 3 on run past 10^4
      std::vector<Pos> g;
      for (Pos p = start; p <= start + 4000; ++p) g.push_back(p);
      FinSet F = maximal_set(g, n);
      ASSERT_EQ(F.min(), start);
      std::vector<Pos> more = F.elems();
      more.push_back(F.max() + 1);
      if (more.size() <= 12) {
        ASSERT_TRUE(o.member(F.elems(), n));
        ASSERT_FALSE(o.member(more, n));
      } else {
        ASSERT_TRUE(s_member(F, n));
        ASSERT_FALSE(s_member(FinSet(more), n));
      }
    }
}

TEST(SchreierMaxWeight, Examples) {
  Vec c{{2, Rational(1, 2)}, {3, Rational(1, 4)}, {4, Rational(1, 4)}};
  auto r = max_weight_subset(c, Family::S(1));
  EXPECT_EQ(r.value, Rational(3, 4));
  EXPECT_EQ(r.set, (FinSet{2, 3}));

  Vec u;
  for (Pos p = 3; p <= 7; ++p) u.set(p, Rational(1, 5));
  auto r2 = max_weight_subset(u, Family::S(1));
  EXPECT_EQ(r2.value, Rational(4, 5));
  EXPECT_EQ(r2.set, (FinSet{4, 5, 6, 7}));

  auto r3 = max_weight_subset(Vec{{9, Rational(1)}}, Family::S(0));
  EXPECT_EQ(r3.value, 1);
  EXPECT_EQ(r3.set, (FinSet{9}));
}

TEST(SchreierMaxWeight, MatchesExhaustive) {
  oracle::SchreierOracle o;
  std::vector<Family> fams{Family::S(0), Family::S(1), Family::S(2), Family::S(3),
                           Family::Star(Family::S(1), Family::A(3))};
  std::mt19937_64 rng(7);
  auto next = [&] { return rng() >> 33; };
  for (int trial = 0; trial < 300; ++trial) {
    Vec c;
    std::size_t k = 1 + next() % 9;
    Pos p = 1 + next() % 3;
    for (std::size_t i = 0; i < k; ++i) {
      c.set(p, Rational(static_cast<long>(1 + next() % 7), static_cast<long>(1 + next() % 5)));
      p += 1 + next() % 2;
    }
    for (const auto& fam : fams) {
      auto r = max_weight_subset(c, fam);
      ASSERT_EQ(r.value, o.max_weight(c, fam)) << fam.describe();
      ASSERT_TRUE(o.family(r.set.elems(), fam));
      Rational t = 0;
      for (Pos q : r.set) t += c[q];
      ASSERT_EQ(t, r.value);
    }
  }
}

TEST(SchreierMaxWeight, RejectsNegative) {
  EXPECT_THROW(max_weight_subset(Vec{{2, Rational(-1)}}, Family::S(1)), std::invalid_argument);
}
