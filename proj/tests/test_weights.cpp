#include "terminal_fano/weights.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

using namespace terminal_fano;
using terminal_fano::testing::scramble;
using terminal_fano::testing::W;

TEST(Validate, AllConditionsHoldForProductOfLines) {
  auto r = validate(W("1,1,0,0;0,0,1,1"));
  EXPECT_TRUE(r.columns_nonzero);
  EXPECT_TRUE(r.strictly_convex);
  EXPECT_TRUE(r.q_factorial);
  EXPECT_TRUE(r.picard_rank_two);
  EXPECT_TRUE(r.well_formed);
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.s_plus, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(r.s_minus, (std::vector<std::size_t>{2, 3}));
}

TEST(Validate, ColumnParallelToSumIsNotQFactorial) {
  auto r = validate(W("1,1,1,1;0,0,1,3"));
  EXPECT_FALSE(r.q_factorial);
  EXPECT_FALSE(r.ok());
  EXPECT_EQ(r.s_plus.size() + r.s_minus.size(), 3u);
}

TEST(Validate, OneSidedSplitFailsPicardRankCondition) {
  auto r = validate(W("1,0,0,0;1,1,1,1"));
  EXPECT_FALSE(r.picard_rank_two);
  EXPECT_TRUE(r.q_factorial);
}

TEST(Validate, ZeroColumnAndNonConvex) {
  EXPECT_FALSE(validate(W("1,0,0,0;0,0,1,1")).columns_nonzero);
  EXPECT_FALSE(validate(W("1,-1,0,0;0,0,1,1")).strictly_convex);
  EXPECT_FALSE(validate(W("1,-1,0,0;0,0,1,-1")).strictly_convex);
}

TEST(Validate, PartitionCoversColumnsExactlyWhenQFactorial) {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 2000; ++t) {
    auto w = sample_random(6, 5, rng);
    auto r = validate(w);
    EXPECT_EQ(r.q_factorial, r.s_plus.size() + r.s_minus.size() == w.size());
  }
}

TEST(WellFormed, Examples) {
  EXPECT_TRUE(is_well_formed(W("1,1,0,0;0,0,1,1")));
  EXPECT_FALSE(is_well_formed(W("2,2,0,0;0,0,1,1")));
  EXPECT_TRUE(is_well_formed(W("1,1,0,0,0;0,0,1,1,2")));
  EXPECT_TRUE(is_standard(W("1,1,0,0;0,0,1,1")));
  EXPECT_FALSE(is_standard(W("2,2,0,0;0,0,2,2")));
}

TEST(WellFormed, CommonFactorOfAllMinorsBreaksIt) {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 500; ++t) {
    auto w = sample_random(5, 6, rng);
    std::vector<std::int64_t> a = w.matrix().row_a();
    for (auto& x : a) x *= 3;
    EXPECT_FALSE(is_well_formed(WeightMatrix(a, w.matrix().row_b())));
  }
}

TEST(FanoIndex, Examples) {
  EXPECT_EQ(fano_index(W("1,1,0,0;0,0,1,1")), 2);
  EXPECT_EQ(fano_index(W("1,1,0,0;0,1,1,1")), 1);
  EXPECT_EQ(fano_index(W("1,1,0,0,0;0,0,1,1,1")), 1);
}

TEST(Standardize, Examples) {
  EXPECT_EQ(standardize(W("1,1,0,0;0,0,1,1")).matrix(), W("1,1,0,0;0,0,1,1"));
  EXPECT_EQ(standardize(W("0,0,1,1;1,1,0,0")).matrix(), W("1,1,0,0;0,0,1,1"));
  EXPECT_EQ(standardize(W("1,1,0,0;1,1,1,1")).matrix(), W("1,1,0,0;0,0,1,1"));
}

TEST(Standardize, RejectsNonConvex) {
  EXPECT_THROW(standardize(W("1,-1,0,0;0,0,1,1")), invalid_matrix);
}

TEST(Standardize, OutputIsStandardAndIdempotent) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 3000; ++t) {
    auto w = sample_random(4 + t % 7, 7, rng);
    WeightMatrix s = scramble(w, rng);
    auto sw = standardize(s);
    EXPECT_TRUE(is_standard_form(sw));
    EXPECT_EQ(standardize(sw).matrix(), sw.matrix());
  }
}

TEST(Standardize, TiesOnARayOrderedByNorm) {
  auto s = standardize(W("2,1,0,0;0,0,1,1"));
  EXPECT_EQ(s.matrix(), W("1,2,0,0;0,0,1,1"));
}

TEST(CanonicalKey, ScrambleInvariance) {
  std::mt19937_64 rng(4);
  int trials = 0;
  while (trials < 10000) {
    auto w = sample_random(4 + trials % 7, 7, rng);
    if (!validate(w).ok()) continue;
    ++trials;
    const std::string key = canonical_key(w);
    ASSERT_EQ(canonical_key(scramble(w, rng)), key) << format_text(w);
  }
}

TEST(CanonicalKey, RowSwapAndIdempotence) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 2000; ++t) {
    auto w = sample_random(4 + t % 7, 7, rng);
    if (!validate(w).ok()) continue;
    const std::string key = canonical_key(w);
    EXPECT_EQ(canonical_key(w.matrix().swapped_rows()), key);
    EXPECT_EQ(canonical_key(standardize(w)), key);
    EXPECT_EQ(canonical_key(parse_text(key)), key);
    EXPECT_TRUE(is_standard_form(parse_text(key)));
  }
}

TEST(CanonicalKey, DistinguishesFanoIndex) {
  EXPECT_NE(canonical_key(W("1,1,0,0;0,0,1,1")), canonical_key(W("1,1,0,0;0,1,1,1")));
}

TEST(SampleRandom, RangesAndDeterminism) {
  std::mt19937_64 r1(9), r2(9);
  for (int t = 0; t < 2000; ++t) {
    auto w = sample_random(10, 7, r1);
    EXPECT_EQ(w, sample_random(10, 7, r2));
    EXPECT_GE(w.a(0), 1);
    EXPECT_EQ(w.b(0), 0);
    EXPECT_LT(w.a(9), w.b(9));
    for (std::size_t i = 0; i < 10; ++i) {
      EXPECT_GE(w.a(i), 0);
      EXPECT_LE(w.a(i), 7);
      EXPECT_GE(w.b(i), 0);
      EXPECT_LE(w.b(i), 7);
    }
  }
}

TEST(TextFormat, RoundTripAndErrors) {
  auto w = W("1,1,0,0,0;0,0,1,1,2");
  EXPECT_EQ(format_text(w), "1,1,0,0,0;0,0,1,1,2");
  EXPECT_EQ(parse_text(format_text(w)), w);
  EXPECT_THROW(parse_text("1,1,0;0,1,1"), parse_error);
  EXPECT_THROW(parse_text("1,1,0,0;0,1,1"), parse_error);
  EXPECT_THROW(parse_text("1,1,x,0;0,1,1,1"), parse_error);
  EXPECT_THROW(parse_text("1,1,0,0 0,1,1,1"), parse_error);
  EXPECT_THROW(parse_text("1,,0,0;0,1,1,1"), parse_error);
  EXPECT_THROW(parse_text("99999999999999999999,1,0,0;0,1,1,1"), parse_error);
}

TEST(WeightMatrix, ConstructorChecksShape) {
  EXPECT_THROW(WeightMatrix({1, 1, 0}, {0, 1, 1}), invalid_matrix);
  EXPECT_THROW(WeightMatrix({1, 1, 0, 0}, {0, 1, 1}), invalid_matrix);
  EXPECT_THROW(StandardWeightMatrix::from_standard(W("0,0,1,1;1,1,0,0")), invalid_matrix);
}
