#include "liesym/prolongation.hpp"

#include <gtest/gtest.h>

#include "liesym/calculus.hpp"
#include "liesym/equivalence.hpp"
#include "liesym/errors.hpp"
#include "liesym/parser.hpp"
#include "liesym/pde_family.hpp"

namespace liesym {
namespace {

SampleSpec jet_spec() {
  SampleSpec spec;
  spec.samples = 100;
  spec.tolerance = 1e-10;
  spec.intervals = {{"x", {0.5, 2.0}},   {"y", {-0.8, 0.8}},   {"u", {0.5, 2.0}},   {"ux", {-1, 1}},
                    {"uy", {-1, 1}},     {"uxx", {-1, 1}},     {"uxy", {-1, 1}},    {"uyy", {-1, 1}}};
  return spec;
}

TEST(TotalDerivative, ChainRule) {
  EXPECT_EQ(total_derivative(parse("x*u^2"), Direction::x), parse("u^2 + 2*x*u*ux"));
  EXPECT_EQ(total_derivative(parse("y*ux"), Direction::y), parse("ux + y*uxy"));
  EXPECT_EQ(total_derivative(parse("uy"), Direction::x), parse("uxy"));
}

TEST(TotalDerivative, Commute) {
  Expr f = parse("x^2*y*u^3 + y/x*u");
  Expr dxy = total_derivative(total_derivative(f, Direction::x), Direction::y);
  Expr dyx = total_derivative(total_derivative(f, Direction::y), Direction::x);
  EXPECT_EQ(expand(dxy), expand(dyx));
}

TEST(TotalDerivative, RejectsThirdOrder) {
  EXPECT_THROW(total_derivative(parse("uxx"), Direction::x), OrderOverflowError);
}

TEST(Prolong, RotationLikeFieldByHand) {
  ProlongedField p = prolong2(rotation_like_field());
  EXPECT_EQ(p.phi_x, parse("-uy"));
  EXPECT_EQ(p.phi_y, parse("-ux"));
  EXPECT_EQ(p.phi_xx, parse("-2*uxy"));
  EXPECT_EQ(p.phi_xy, parse("-uxx - uyy"));
  EXPECT_EQ(p.phi_yy, parse("-2*uxy"));
}

TEST(Prolong, ExceptionalFieldByHand) {
  ProlongedField p = prolong2(exceptional_field());
  // degree one in (x, y)
  EXPECT_EQ(p.phi_x, expand(parse("-(a + 2)*y*ux + 2*x*uy")));
  EXPECT_EQ(p.phi_y, expand(parse("-a*u - (a + 2)*y*uy - 2*x*ux")));
}

TEST(Prolong, ScalingFieldByHand) {
  ProlongedField p = prolong2(scaling_field());
  EXPECT_EQ(p.phi_x, expand(parse("-(a/2 + 1)*ux")));
  EXPECT_EQ(p.phi_xx, expand(parse("-(a/2 + 2)*uxx")));
  EXPECT_EQ(p.phi_xy, expand(parse("-(a/2 + 2)*uxy")));
}

TEST(Prolong, TranslationIsTrivial) {
  ProlongedField p = prolong2(y_translation_field());
  for (const Expr* c : {&p.phi_x, &p.phi_y, &p.phi_xx, &p.phi_xy, &p.phi_yy}) EXPECT_TRUE(c->is_zero());
}

TEST(Prolong, AuxiliaryConditionMatchesHandForm) {
  PdeInstance g = gss_preset();
  Expr computed = apply_prolonged(prolong2(rotation_like_field()), g.delta);
  Expr hand = substitute(parse("-4*uxy - a*y*x^(-2)*ux - a/x*uy - g1*r*x^(r - 1)*y*u^c1"), g.parameter_bindings());
  EXPECT_TRUE(equiv_numeric(computed, hand, jet_spec()).equivalent());
}

TEST(Prolong, AuxiliaryConditionSymbolicInstance) {
  // general r, a, c1, c2 with the same hand formula
  PdeInstance inst = build_instance(sym("a"), sym("r"), sym("c1"), sym("c2"), sym("g1"), sym("g2"));
  Expr computed = apply_prolonged(prolong2(rotation_like_field()), inst.delta);
  Expr hand = parse("-4*uxy - a*y*x^(-2)*ux - a/x*uy - g1*r*x^(r - 1)*y*u^c1");
  SampleSpec spec = jet_spec();
  spec.intervals["r"] = {0.5, 3.0};
  spec.intervals["c1"] = {-3.0, 3.0};
  spec.intervals["c2"] = {-3.0, 3.0};
  EXPECT_TRUE(equiv_numeric(computed, hand, spec).equivalent());
}

TEST(VectorField, ApplyAndCharacteristic) {
  VectorField y = rotation_like_field();
  EXPECT_EQ(y.apply(parse("x^2 - y^2")), Expr(0));
  EXPECT_EQ(characteristic(y), parse("-y*ux - x*uy"));
  VectorField sum = y + y_translation_field();
  EXPECT_EQ(sum.xi2, parse("x + 1"));
}

TEST(VectorField, RejectsDerivativeComponents) {
  EXPECT_THROW(VectorField::parse("x", "y", "ux"), InvalidParameterError);
  EXPECT_THROW((VectorField{sym("x"), sym("uxx"), Expr(0)}.validate()), InvalidParameterError);
}

TEST(JetSampler, StaysInBox) {
  JetSampler s;
  std::mt19937_64 rng(1);
  for (int i = 0; i < 200; ++i) {
    JetPoint p = s.draw(rng);
    EXPECT_GE(p.x, 0.5);
    EXPECT_LE(p.x, 2.0);
    EXPECT_GE(p.u, 0.5);
    JetPoint back = JetPoint::from_env(p.to_env());
    EXPECT_EQ(back.uxy, p.uxy);
  }
}

}  // namespace
}  // namespace liesym
