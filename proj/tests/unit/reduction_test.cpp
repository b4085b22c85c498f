#include "liesym/reduction.hpp"

#include <gtest/gtest.h>

#include <random>

#include "liesym/calculus.hpp"
#include "liesym/errors.hpp"
#include "liesym/evaluate.hpp"
#include "liesym/normalize.hpp"
#include "liesym/parser.hpp"

namespace liesym {
namespace {

TEST(Reduce, GssInvariantForm) {
  ReducedEquation red = reduce_to_invariant(gss_preset());
  EXPECT_EQ(red.expr, parse("8*x^2*vss - 4*s*vss - 2*vs + 3/2*x^2*v^(-7) - 1/4*v^(-3)"));
}

TEST(Reduce, SymbolicForm) {
  ReducedEquation red = reduce_to_invariant(gss_symbolic());
  Expr expected = parse("-4*s*vss + 2*a*vs + 8*x^2*vss - (a/2)*(a + 4)*x^2*v^(1 + 8/a) + (a/4)*(3*a + 4)*v^(1 + 4/a)");
  EXPECT_TRUE(equal_symbolic(red.expr, expected));
}

TEST(Reduce, NeedsRTwo) {
  PdeInstance g = gss_preset();
  PdeInstance r1 = build_instance(g.a, Expr(1), g.c1, g.c2, g.gamma1, g.gamma2);
  EXPECT_THROW(reduce_to_invariant(r1), InvalidParameterError);
}

TEST(Reduce, AgreesWithDirectSubstitution) {
  // v = s^2 + 1
  PdeInstance g = gss_preset();
  Expr u = parse("(x^2 - y^2)^2 + 1");
  Bindings jet{{"u", u},
               {"ux", diff(u, "x")},
               {"uy", diff(u, "y")},
               {"uxx", diff(diff(u, "x"), "x")},
               {"uyy", diff(diff(u, "y"), "y")}};
  Expr direct = substitute(g.delta, jet);
  Expr reduced = substitute(reduce_to_invariant(g).expr,
                            {{"v", parse("s^2 + 1")}, {"vs", parse("2*s")}, {"vss", Expr(2)}});
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> dx(0.5, 2.0), dy(-1.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    double x = dx(rng), y = dy(rng);
    double want = eval_at(direct, {{"x", x}, {"y", y}});
    double got = eval_at(reduced, {{"x", x}, {"s", x * x - y * y}});
    EXPECT_NEAR(got, want, 1e-10 * (1 + std::fabs(want)));
  }
}

TEST(Split, GssOdes) {
  SeparatedOdes odes = split_by_x2(reduce_to_invariant(gss_preset()));
  EXPECT_EQ(odes.ode_a, parse("-4*s*vss - 2*vs - 1/4*v^(-3)"));
  EXPECT_EQ(odes.ode_b, parse("8*vss + 3/2*v^(-7)"));
}

TEST(Split, Exactness) {
  for (const PdeInstance& inst : {gss_preset(), gss_symbolic()}) {
    ReducedEquation red = reduce_to_invariant(inst);
    SeparatedOdes odes = split_by_x2(red);
    EXPECT_EQ(expand(odes.ode_a + parse("x^2") * odes.ode_b), expand(red.expr));
  }
}

TEST(Split, Edges) {
  SeparatedOdes flat = split_by_x2({parse("vs + s*v")});
  EXPECT_EQ(flat.ode_a, parse("vs + s*v"));
  EXPECT_TRUE(flat.ode_b.is_zero());
  EXPECT_THROW(split_by_x2({parse("x^4*v + vs")}), NonlinearityError);
  EXPECT_THROW(split_by_x2({parse("x^3*v")}), NonlinearityError);
  EXPECT_THROW(split_by_x2({parse("x^a*v")}), NonlinearityError);
}

TEST(Profile, Coefficients) {
  CandidateProfile p = candidate_profile(Expr(-1));
  EXPECT_EQ(p.v, parse("s^(1/4)"));
  EXPECT_EQ(p.gamma1, Expr(Rational(-3, 2)));
  EXPECT_EQ(p.gamma2, Expr(Rational(1, 4)));
  CandidateProfile q = candidate_profile(Expr(-4));
  EXPECT_EQ(q.v, sym("s"));
  EXPECT_EQ(q.gamma1, Expr(0));
  EXPECT_EQ(q.gamma2, Expr(-8));
  CandidateProfile r = candidate_profile(Expr(2));
  EXPECT_EQ(r.v, parse("s^(-1/2)"));
  EXPECT_EQ(r.gamma1, Expr(6));
  EXPECT_EQ(r.gamma2, Expr(-5));
  EXPECT_THROW(candidate_profile(Expr(0)), InvalidParameterError);
}

TEST(VerifyOde, GssCommonSolution) {
  SeparatedOdes odes = split_by_x2(reduce_to_invariant(gss_preset()));
  EXPECT_TRUE(verify_ode(odes.ode_a, parse("s^(1/4)")).is_zero());
  EXPECT_TRUE(verify_ode(odes.ode_b, parse("s^(1/4)")).is_zero());
  EXPECT_FALSE(verify_ode(odes.ode_b, parse("s^(1/2)")).is_zero());
}

TEST(VerifyOde, SymbolicCommonSolution) {
  PdeInstance inst = gss_symbolic();
  SeparatedOdes odes = split_by_x2(reduce_to_invariant(inst));
  Expr v = candidate_profile(inst.a).v;
  EXPECT_TRUE(verify_ode(odes.ode_a, v).is_zero());
  EXPECT_TRUE(verify_ode(odes.ode_b, v).is_zero());
}

TEST(VerifyOde, PolynomialProfileCase) {
  auto [c1, c2] = exceptional_exponents(Expr(-4), Expr(2));
  PdeInstance inst = build_instance(Expr(-4), Expr(2), c1, c2, Expr(0), Expr(-8));
  SeparatedOdes odes = split_by_x2(reduce_to_invariant(inst));
  EXPECT_EQ(odes.ode_b, parse("8*vss"));
  EXPECT_TRUE(verify_ode(odes.ode_a, sym("s")).is_zero());
  EXPECT_TRUE(verify_ode(odes.ode_b, sym("s")).is_zero());
}

ConstraintSystem delta_and_invariance(bool swapped) {
  PdeInstance g = gss_preset();
  Constraint d{"Delta", g.delta, "uyy"};
  Constraint i{"Delta1", invariance_condition(), "uy"};
  return swapped ? ConstraintSystem{{i, d}} : ConstraintSystem{{d, i}};
}

TEST(RestrictedEval, OrderIndependent) {
  PdeInstance g = gss_preset();
  Expr aux = auxiliary_condition(g);
  RestrictedStats a = restricted_eval(aux, delta_and_invariance(false), g.parameter_env());
  RestrictedStats b = restricted_eval(aux, delta_and_invariance(true), g.parameter_env());
  EXPECT_NEAR(a.max_abs, b.max_abs, 1e-9 * a.max_abs);
  EXPECT_NEAR(a.mean_abs, b.mean_abs, 1e-9 * a.mean_abs);
  EXPECT_EQ(a.samples, 200u);
  EXPECT_LE(a.max_constraint_residual, 1e-9);
}

TEST(RestrictedEval, ExceptionalFieldOnShell) {
  PdeInstance g = gss_preset();
  Expr target = apply_prolonged(prolong2(bind_parameters(exceptional_field(), g)), g.delta);
  RestrictedStats s = restricted_eval(target, {{{"Delta", g.delta, "uyy"}}}, g.parameter_env());
  EXPECT_LE(s.max_abs, 1e-9);
}

TEST(RestrictedEval, RejectsNonAffine) {
  PdeInstance g = gss_preset();
  EXPECT_THROW(restricted_eval(g.delta, {{{"bad", parse("uy^2 - 1"), "uy"}}}, g.parameter_env()),
               NonlinearityError);
  EXPECT_THROW(restricted_eval(g.delta, {{{"none", parse("ux"), "uy"}}}, g.parameter_env()), NonlinearityError);
}

TEST(RestrictedEval, ResamplesSingularCoefficients) {
  PdeInstance g = gss_preset();
  RestrictedEvalOptions opts;
  opts.min_coefficient = 0.5;  // |x - 1| < 0.5 is singular for this constraint
  RestrictedStats s = restricted_eval(g.delta, {{{"c", parse("(x - 1)*uy - u"), "uy"}}}, g.parameter_env(), opts);
  EXPECT_EQ(s.samples, 200u);
  EXPECT_GT(s.singular_resamples, 0u);
}

TEST(WeakCs, GssChain) {
  WeakCsReport r = weak_cs_report(gss_preset());
  ASSERT_EQ(r.stages.size(), 4u);
  EXPECT_EQ(r.stages[0].outcome, "zero");
  EXPECT_GE(r.stages[1].stats.max_abs, 1e-2);
  EXPECT_GE(r.stages[2].stats.max_abs, 1e-2);
  EXPECT_LE(r.stages[3].stats.max_abs, 1e-12);
  EXPECT_TRUE(r.residual_a.is_zero());
  EXPECT_TRUE(r.residual_b.is_zero());
  EXPECT_TRUE(r.coefficients_match);
  EXPECT_TRUE(r.confirmed);
  EXPECT_EQ(r.verdicts, (std::vector<std::string>{"not exact symmetry", "not proper conditional symmetry",
                                                  "weak conditional symmetry confirmed via separated ODEs"}));
}

TEST(WeakCs, DifferentialConsequencesStage) {
  WeakCsOptions opts;
  opts.differential_consequences = true;
  WeakCsReport r = weak_cs_report(gss_preset(), opts);
  ASSERT_EQ(r.stages.size(), 5u);
  EXPECT_EQ(r.stages[4].outcome, "nonzero");
}

TEST(WeakCs, DegenerateSplit) {
  auto [c1, c2] = exceptional_exponents(Expr(-4), Expr(2));
  PdeInstance inst = build_instance(Expr(-4), Expr(2), c1, c2, Expr(0), Expr(-8));
  WeakCsReport r = weak_cs_report(inst);
  bool noted = false;
  for (const auto& n : r.notes) noted |= n.find("degenerate split") != std::string::npos;
  EXPECT_TRUE(noted);
  EXPECT_EQ(r.ode_b, parse("8*vss"));
}

TEST(WeakCs, NonExceptionalContext) {
  PdeInstance g = gss_preset();
  PdeInstance bad = build_instance(g.a, g.r, parse("-6.9"), g.c2, g.gamma1, g.gamma2);
  WeakCsReport r = weak_cs_report(bad);
  EXPECT_EQ(r.stages[0].expected, "nonzero");
  EXPECT_GT(r.stages[0].stats.max_abs, 1e-2);
  EXPECT_FALSE(r.residual_b.is_zero());
  EXPECT_FALSE(r.confirmed);
}

}  // namespace
}  // namespace liesym
