#include "liesym/number.hpp"

#include <gtest/gtest.h>

namespace liesym {
namespace {

TEST(Rational, ReducesAndNormalizesSign) {
  Rational r(6, -4);
  EXPECT_EQ(r.num(), -3);
  EXPECT_EQ(r.den(), 2);
  EXPECT_EQ(Rational(0, -7).den(), 1);
}

TEST(Rational, FromDecimalIsExact) {
  EXPECT_EQ(*Rational::from_decimal("-6.9"), Rational(-69, 10));
  EXPECT_EQ(*Rational::from_decimal("0.25"), Rational(1, 4));
  EXPECT_EQ(*Rational::from_decimal("1e-3"), Rational(1, 1000));
  EXPECT_EQ(*Rational::from_decimal("2.5E2"), Rational(250));
  EXPECT_FALSE(Rational::from_decimal("1.2.3"));
  EXPECT_FALSE(Rational::from_decimal("."));
}

TEST(Rational, CheckedOpsReportOverflow) {
  Rational big(INT64_MAX);
  EXPECT_FALSE(big.checked_mul(Rational(2)));
  EXPECT_FALSE(big.checked_add(Rational(1)));
  EXPECT_EQ(*Rational(2, 3).checked_pow(-2), Rational(9, 4));
}

TEST(Number, OverflowFallsBackToDouble) {
  Number n = Number(Rational(INT64_MAX)) * Number(Rational(4));
  EXPECT_FALSE(n.is_exact());
  EXPECT_DOUBLE_EQ(n.to_double(), 4.0 * static_cast<double>(INT64_MAX));
}

TEST(Number, PowerRoots) {
  EXPECT_EQ(Number::power(Number(Rational(9, 4)), Number(Rational(1, 2)))->rational(), Rational(3, 2));
  EXPECT_EQ(Number::power(Number(Rational(8)), Number(Rational(-2, 3)))->rational(), Rational(1, 4));
  // no exact root: left symbolic by the caller
  EXPECT_FALSE(Number::power(Number(Rational(2)), Number(Rational(1, 2))));
  EXPECT_FALSE(Number::power(Number(Rational(-8)), Number(Rational(1, 3))));
  EXPECT_FALSE(Number::power(Number(Rational(0)), Number(Rational(-1))));
}

TEST(Number, CompareOrdersExactBeforeFloatOnTies) {
  EXPECT_LT(Number::compare(Number(Rational(1, 2)), Number(0.5)), 0);
  EXPECT_GT(Number::compare(Number(0.75), Number(Rational(1, 2))), 0);
}

TEST(Number, FloatPrintingKeepsMarker) {
  EXPECT_EQ(Number(2.0).to_string(), "2.0");
  EXPECT_EQ(Number(Rational(-3, 2)).to_string(), "-3/2");
}

}  // namespace
}  // namespace liesym
