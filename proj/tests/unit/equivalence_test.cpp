#include "liesym/equivalence.hpp"

#include <gtest/gtest.h>

#include "liesym/errors.hpp"
#include "liesym/parser.hpp"

namespace liesym {
namespace {

TEST(EquivNumeric, IdentityHolds) {
  auto r = equiv_numeric(parse("(x + y)^3"), parse("x^3 + 3*x^2*y + 3*x*y^2 + y^3"));
  EXPECT_TRUE(r.equivalent());
  EXPECT_EQ(r.samples, 64u);
}

TEST(EquivNumeric, FindsWitness) {
  auto r = equiv_numeric(parse("(x + y)^2"), parse("x^2 + y^2"));
  EXPECT_EQ(r.status, EquivalenceStatus::not_equivalent);
  ASSERT_TRUE(r.witness);
  EXPECT_TRUE(r.witness->count("x"));
}

TEST(EquivNumeric, ResamplesOutsideDomain) {
  SampleSpec spec;
  spec.intervals["x"] = {-1.0, 1.0};
  auto r = equiv_numeric(parse("(x^2)^(1/2)*x^(1/2)"), parse("x^(3/2)"), spec);
  EXPECT_TRUE(r.equivalent());
  EXPECT_GT(r.rejected, 0u);
}

TEST(EquivNumeric, AcceptPredicate) {
  SampleSpec spec;
  spec.intervals["y"] = {-2.0, 2.0};
  spec.accept = [](const Env& e) { return e.at("x") > std::fabs(e.at("y")); };
  auto r = equiv_numeric(parse("(x^2 - y^2)^(1/2)"), parse("(x - y)^(1/2)*(x + y)^(1/2)"), spec);
  EXPECT_TRUE(r.equivalent());
}

TEST(EquivNumeric, UnsampleableWhenNothingEvaluates) {
  SampleSpec spec;
  spec.intervals["x"] = {-2.0, -1.0};
  auto r = equiv_numeric(parse("x^(1/2)"), parse("x^(1/2)"), spec);
  EXPECT_EQ(r.status, EquivalenceStatus::unsampleable);
}

TEST(EquivNumeric, DeterministicForSeed) {
  auto a = equiv_numeric(parse("x*y"), parse("x*y + 1e-12*x"));
  auto b = equiv_numeric(parse("x*y"), parse("x*y + 1e-12*x"));
  EXPECT_EQ(a.max_scaled_difference, b.max_scaled_difference);
}

}  // namespace
}  // namespace liesym
