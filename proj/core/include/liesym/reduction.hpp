#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "liesym/expr.hpp"
#include "liesym/pde_family.hpp"
#include "liesym/prolongation.hpp"

namespace liesym {

/// Residual of the r = 2 equation after u = v(s), s = x^2 - y^2, written
/// over {s, v, vs, vss, x} and linear in x^2.
struct ReducedEquation {
  Expr expr;
};

/// Chain-rule substitution u -> v(x^2 - y^2) followed by y^2 -> x^2 - s.
/// Throws InvalidParameterError unless r is the number 2.
ReducedEquation reduce_to_invariant(const PdeInstance& instance);

struct SeparatedOdes {
  /// The x-free part (coefficient of (x^2)^0).
  Expr ode_a;
  /// The coefficient of x^2.
  Expr ode_b;
};

/// Splits a reduced residual into its (x^2)^0 and (x^2)^1 coefficients.
/// Throws NonlinearityError when it is not affine in x^2.
SeparatedOdes split_by_x2(const ReducedEquation& reduced);

struct CandidateProfile {
  Expr v;       // s^(-a/4)
  Expr gamma1;  // (a/2)(a+4)
  Expr gamma2;  // -(a/4)(3a+4)
};

/// Throws InvalidParameterError when a is zero.
CandidateProfile candidate_profile(const Expr& a);

/// Substitutes v, vs, vss from the profile and returns the normalized
/// residual (0 for a solution).
Expr verify_ode(const Expr& ode, const Expr& profile);

/// Y u = y ux + x uy.
Expr invariance_condition();

/// Pr^(2) Y applied to the instance residual.
Expr auxiliary_condition(const PdeInstance& instance);

struct Constraint {
  std::string label;
  Expr expr;
  /// Jet symbol this constraint is solved for; it must enter affinely.
  std::string eliminate;
};

struct ConstraintSystem {
  std::vector<Constraint> constraints;
};

struct RestrictedEvalOptions {
  std::size_t samples = 200;
  std::uint64_t seed = 42;
  JetSampler sampler{};
  /// Sample points where an elimination coefficient is smaller than this in
  /// magnitude are redrawn.
  double min_coefficient = 1e-6;
};

struct RestrictedStats {
  double max_abs = 0.0;
  double mean_abs = 0.0;
  std::size_t samples = 0;
  std::size_t singular_resamples = 0;
  /// Largest |constraint| at the constrained sample points.
  double max_constraint_residual = 0.0;
  /// Target with all eliminations substituted.
  Expr restricted_target;
};

/// Solves the constraints in order for their elimination symbols (each
/// solution is substituted into later constraints), substitutes into the
/// target and samples it at random jet points.
RestrictedStats restricted_eval(const Expr& target, const ConstraintSystem& system, const Env& parameters,
                                const RestrictedEvalOptions& options = {});

struct WeakCsOptions {
  RestrictedEvalOptions eval{};
  /// Also run a stage that imposes D_x(Y u) = D_y(Y u) = 0.
  bool differential_consequences = false;
  /// Stage outcome "nonzero" needs max_abs at or above this ...
  double nonzero_threshold = 1e-2;
  /// ... and "zero" needs max_abs at or below this.
  double zero_threshold = 1e-9;
};

struct WeakCsStage {
  std::string name;
  std::string target;
  std::vector<std::string> constraints;
  RestrictedStats stats;
  /// "zero", "nonzero" or "inconclusive".
  std::string outcome;
  std::string expected;
};

struct WeakCsReport {
  std::vector<WeakCsStage> stages;
  Expr reduced;
  Expr ode_a;
  Expr ode_b;
  Expr profile;
  Expr profile_gamma1;
  Expr profile_gamma2;
  bool coefficients_match = false;
  Expr residual_a;
  Expr residual_b;
  std::vector<std::string> notes;
  std::vector<std::string> verdicts;
  /// Every stage matched its expected outcome and both ODE residuals are 0.
  bool confirmed = false;
};

/// The full chain for an r = 2 numeric instance: restricted evaluations of
/// Pr^(2) Y Delta under Delta, Y u and Pr^(2) Y Delta, then the reduction,
/// split and common-profile check.
WeakCsReport weak_cs_report(const PdeInstance& instance, const WeakCsOptions& options = {});

}  // namespace liesym
