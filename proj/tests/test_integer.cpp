#include "terminal_fano/integer.hpp"

#include <gtest/gtest.h>

#include <limits>

using namespace terminal_fano;

TEST(CheckedInt, ArithmeticMatchesInt64) {
  CheckedInt x = 17, y = -5;
  EXPECT_EQ((x + y).value(), 12);
  EXPECT_EQ((x - y).value(), 22);
  EXPECT_EQ((x * y).value(), -85);
  EXPECT_EQ((x / y).value(), -3);
  EXPECT_EQ((x % y).value(), 2);
  EXPECT_LT(y, x);
}

TEST(CheckedInt, OverflowThrows) {
  const CheckedInt big = std::numeric_limits<std::int64_t>::max();
  const CheckedInt small = std::numeric_limits<std::int64_t>::min();
  EXPECT_THROW(big + CheckedInt(1), overflow_error);
  EXPECT_THROW(small - CheckedInt(1), overflow_error);
  EXPECT_THROW(big * CheckedInt(2), overflow_error);
  EXPECT_THROW(-small, overflow_error);
  EXPECT_THROW(small / CheckedInt(-1), overflow_error);
  EXPECT_THROW(CheckedInt(1) / CheckedInt(0), std::domain_error);
}

TEST(IntegerHelpers, FloorModAndDiv) {
  EXPECT_EQ(floor_mod<std::int64_t>(-7, 3), 2);
  EXPECT_EQ(floor_mod<std::int64_t>(7, 3), 1);
  EXPECT_EQ(floor_div<std::int64_t>(-7, 3), -3);
  EXPECT_EQ(floor_div<std::int64_t>(7, 3), 2);
  EXPECT_EQ(floor_mod(BigInt(-7), BigInt(3)), BigInt(2));
}

TEST(IntegerHelpers, ExtendedGcd) {
  for (std::int64_t x = -12; x <= 12; ++x)
    for (std::int64_t y = -12; y <= 12; ++y) {
      auto [g, s, t] = ext_gcd<std::int64_t>(x, y);
      EXPECT_EQ(g, gcd_of<std::int64_t>(x, y));
      EXPECT_GE(g, 0);
      EXPECT_EQ(s * x + t * y, g);
    }
}

TEST(IntegerHelpers, WideningRerunsWithBigInt) {
  int calls = 0;
  auto r = with_widening([&]<class Int>() {
    ++calls;
    Int x = std::numeric_limits<std::int64_t>::max();
    Int y = x * Int(4);
    return to_double(y / Int(4));
  });
  EXPECT_EQ(calls, 2);
  EXPECT_DOUBLE_EQ(r, static_cast<double>(std::numeric_limits<std::int64_t>::max()));
}

TEST(IntegerHelpers, ToI64RejectsOutOfRange) {
  BigInt huge = BigInt(std::numeric_limits<std::int64_t>::max()) * 2;
  EXPECT_THROW(to_i64(huge), overflow_error);
  EXPECT_EQ(to_i64(BigInt(-42)), -42);
}
