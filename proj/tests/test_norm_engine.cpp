#include "iw/norm_engine.hpp"
#include "iw/io.hpp"
#include "oracles/norm_oracle.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace iw;

namespace {

Schedule sched() { return default_schedule(4); }
SpaceSpec space(Variant v) { return SpaceSpec::make(v, sched()); }

void expect_witness(const Vec& x, const SpaceSpec& sp, const NormResult& r) {
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_TRUE(validate(*r.witness, sp).empty()) << InvalidWitness::render(validate(*r.witness, sp));
  EXPECT_EQ(certify_lower(x, sp, *r.witness), r.value);
}

Vec random_vec(std::mt19937_64& rng, Pos lo, Pos hi) {
  static const std::vector<Rational> grid{Rational(1), Rational(1, 2), Rational(2), Rational(3, 4),
                                          Rational(1, 3), Rational(-1), Rational(5, 2)};
  Vec x;
  for (Pos p = lo; p <= hi; ++p)
    if (rng() % 3 != 0) x.set(p, grid[rng() % grid.size()]);
  return x;
}

}  // namespace

TEST(NormEngine, SpecExamples) {
  auto sp = space(Variant::Xiw);
  auto r = norm(Vec{{5, 1}}, sp);
  EXPECT_EQ(r.value, 1);
  expect_witness(Vec{{5, 1}}, sp, r);

  Vec x{{2, 2}, {3, 1}};
  auto r2 = norm(x, sp);
  EXPECT_EQ(r2.value, 2);
  EXPECT_EQ(*r2.witness, Functional::leaf(2));

  Vec y{{2, 1}, {3, 1}, {4, 1}};
  auto r3 = norm(y, sp);
  EXPECT_EQ(r3.value, 1);
  expect_witness(y, sp, r3);

  Vec z{{1, 1}, {2, 1}, {3, 1}};
  EXPECT_EQ(norm(z, SpaceSpec::l1j(sched(), 1)).value, Rational(3, 2));
}

TEST(NormEngine, ReferenceNorms) {
  Vec x{{2, Rational(-3)}, {5, Rational(1, 2)}};
  EXPECT_EQ(norm(x, space(Variant::L1)).value, Rational(7, 2));
  auto c0 = norm(x, space(Variant::C0));
  EXPECT_EQ(c0.value, 3);
  EXPECT_EQ(*c0.witness, Functional::leaf(2, -1));
  auto lp = space(Variant::Lp);
  auto r = norm(Vec{{1, 1}, {2, 1}}, lp);
  ASSERT_TRUE(r.enclosure.has_value());
  // sqrt 2 in the enclosure: lo^2 <= 2 <= hi^2
  Rational lo = r.enclosure->lo().exact(), hi = r.enclosure->hi().exact();
  EXPECT_LE(lo * lo, 2);
  EXPECT_GE(hi * hi, 2);
  EXPECT_LE(r.enclosure->width(), Rational(1, 1000000));
}

TEST(NormEngine, Pnorm) {
  auto one = pnorm(Vec{{3, Rational(-5, 7)}}, 2);
  ASSERT_TRUE(one.point().has_value());
  EXPECT_EQ(*one.point(), Rational(5, 7));
  EXPECT_TRUE(one.contains(Rational(5, 7)));
  auto zero = pnorm(Vec{}, 3);
  ASSERT_TRUE(zero.point().has_value());
  EXPECT_EQ(*zero.point(), 0);
  auto r = pnorm(Vec{{1, 1}, {2, 1}}, 2, Rational(1, 100000));
  EXPECT_TRUE(r.certainly_gt(Rational(141421, 100000)));
  EXPECT_TRUE(r.certainly_le(Rational(141422, 100000)));
  EXPECT_THROW(pnorm(Vec{{1, 1}}, 1), std::invalid_argument);
}

TEST(NormEngine, ConstrainedExamples) {
  auto sp = space(Variant::Xiw);
  auto r = constrained_max(Vec{{2, 1}, {3, 1}}, sp, WeightBound::equal(2));
  EXPECT_EQ(r.value, 1);
  expect_witness(Vec{{2, 1}, {3, 1}}, sp, r);
  auto r2 = constrained_max(Vec{{2, 1}}, sp, WeightBound::below(4));
  EXPECT_EQ(r2.value, Rational(1, 2));
  expect_witness(Vec{{2, 1}}, sp, r2);
  // nothing has weight 3
  EXPECT_EQ(constrained_max(Vec{{2, 1}}, sp, WeightBound::equal(3)).value, 0);
}

TEST(NormEngine, ConstrainedBoundedByPruning) {
  std::mt19937_64 rng(11);
  auto sp = space(Variant::Xiw);
  for (int t = 0; t < 30; ++t) {
    Vec x = random_vec(rng, 2, 9);
    if (x.empty()) continue;
    for (BigInt W0 : {BigInt(2), BigInt(4), BigInt(8), BigInt(16)}) {
      auto r = constrained_max(x, sp, WeightBound::equal(W0));
      EXPECT_LE(r.value, x.norm1() / W0);
      EXPECT_EQ(r.value, oracle::NormOracle(x, sp, W0).constrained(W0, true));
      if (r.witness) {
        EXPECT_EQ(weight(*r.witness, sp.schedule).value, W0);
        expect_witness(x, sp, r);
      }
      auto rb = constrained_max(x, sp, WeightBound::below(W0));
      EXPECT_EQ(rb.value, oracle::NormOracle(x, sp, W0).constrained(W0, false));
    }
  }
}

class NormOracleEquivalence : public ::testing::TestWithParam<Variant> {};

TEST_P(NormOracleEquivalence, RandomVectors) {
  SpaceSpec sp = GetParam() == Variant::Aux ? SpaceSpec::aux(sched(), 4) : space(GetParam());
  std::mt19937_64 rng(static_cast<std::uint64_t>(GetParam()) + 100);
  for (int t = 0; t < 60; ++t) {
    Vec x = random_vec(rng, 1 + rng() % 3, 8);
    if (x.empty()) continue;
    auto r = norm(x, sp);
    ASSERT_EQ(r.value, oracle::brute_norm(x, sp)) << to_json(x).dump();
    expect_witness(x, sp, r);
  }
}

INSTANTIATE_TEST_SUITE_P(Variants, NormOracleEquivalence,
                         ::testing::Values(Variant::MixedT, Variant::Xiw, Variant::XiwTilde, Variant::Aux),
                         [](const auto& info) { return variant_name(info.param); });

TEST(NormEngine, AuxTildeAgainstOracle) {
  auto sp = SpaceSpec::aux(sched(), 2, true);
  std::mt19937_64 rng(5);
  for (int t = 0; t < 30; ++t) {
    Vec x = random_vec(rng, 2, 9);
    if (x.empty()) continue;
    auto r = norm(x, sp);
    ASSERT_EQ(r.value, oracle::brute_norm(x, sp)) << to_json(x).dump();
    expect_witness(x, sp, r);
  }
}

TEST(NormEngine, Axioms) {
  std::mt19937_64 rng(3);
  auto sp = space(Variant::Xiw);
  for (int t = 0; t < 40; ++t) {
    Vec x = random_vec(rng, 2, 9);
    if (x.empty()) continue;
    Rational v = norm(x, sp).value;
    EXPECT_EQ(norm(x.scaled(Rational(-3, 7)), sp).value, v * Rational(3, 7));
    EXPECT_EQ(norm(x.abs(), sp).value, v);
    EXPECT_LE(x.norm_inf(), v);
    EXPECT_LE(v, x.norm1());
    Vec y = random_vec(rng, 2, 9);
    EXPECT_LE(norm(x + y, sp).value, v + norm(y, sp).value);
    EXPECT_LE(norm(x.without(x.begin()->first), sp).value, v);
    EXPECT_LE(norm(x, space(Variant::XiwTilde)).value, v);
    EXPECT_LE(v, norm(x, space(Variant::MixedT)).value);
  }
}

TEST(NormEngine, BudgetExceededCarriesBounds) {
  EngineConfig cfg;
  cfg.node_budget = 5;
  Vec x;
  for (Pos p = 2; p <= 12; ++p) x.set(p, 1);
  try {
    norm(x, space(Variant::Xiw), cfg);
    FAIL();
  } catch (const SearchBudgetExceeded& e) {
    EXPECT_EQ(e.upper_bound, 11);
    EXPECT_EQ(e.best_so_far.value, 1);
    EXPECT_TRUE(e.best_so_far.witness.has_value());
  }
}

TEST(NormEngine, CertifyLowerRejectsInvalid) {
  auto sp = space(Variant::Xiw);
  Vec x{{1, 1}, {2, 1}};
  EXPECT_EQ(certify_lower(x, sp, Functional::leaf(2)), 1);
  EXPECT_THROW(certify_lower(x, sp, Functional::make({1}, {Functional::leaf(1), Functional::leaf(2)})),
               InvalidWitness);
}

TEST(NormEngine, LongFlatVector) {
  // twenty ones from position 4: a nested (1/2)-average of S_1 blocks wins
  auto sp = space(Variant::Xiw);
  Vec x;
  for (Pos p = 4; p <= 23; ++p) x.set(p, 1);
  auto r = norm(x, sp);
  expect_witness(x, sp, r);
  EXPECT_GE(r.value, 2);
}

TEST(NormEngine, PVariantEnclosure) {
  auto sp = SpaceSpec::xiw_p(sched(), 2);
  Vec x{{2, 1}, {3, 1}, {4, 1}};
  auto r = norm(x, sp);
  ASSERT_TRUE(r.enclosure.has_value());
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_TRUE(validate(*r.witness, sp).empty());
  EXPECT_EQ(evaluate(*r.witness, x, sp.schedule), r.value);
  EXPECT_TRUE(r.enclosure->contains(r.value));
  EXPECT_LE(r.enclosure->width(), Rational(1, 1000000));
  EXPECT_GE(r.value, 1);
}
