#pragma once

#include <cstdint>
#include <string_view>
#include <utility>

#include "liesym/evaluate.hpp"
#include "liesym/expr.hpp"
#include "liesym/prolongation.hpp"

namespace liesym {

/// One member of the family
///
///   uxx + uyy + (a/x) ux = gamma1 x^r u^c1 + gamma2 u^c2,   a != 0.
///
/// Parameters are expressions so the same type carries numeric instances
/// (exact rationals) and fully symbolic ones.
struct PdeInstance {
  Expr a;
  Expr r;
  Expr c1;
  Expr c2;
  Expr gamma1;
  Expr gamma2;
  /// Residual uxx + uyy + a x^-1 ux - gamma1 x^r u^c1 - gamma2 u^c2.
  Expr delta;
  /// c1 = 1 + 2(r+2)/a and c2 = 1 + 4/a hold exactly.
  bool is_exceptional = false;

  /// All six parameters are numbers.
  bool is_numeric() const noexcept;
  /// Bindings a, r, c1, c2, g1, g2 for evaluation; numeric instances only.
  Env parameter_env() const;
  /// Bindings of the parameter symbols to this instance's values.
  std::map<std::string, Expr, std::less<>> parameter_bindings() const;
};

/// Throws InvalidParameterError when a is the number zero.
PdeInstance build_instance(const Expr& a, const Expr& r, const Expr& c1, const Expr& c2,
                           const Expr& gamma1, const Expr& gamma2);

/// (c1, c2) = (1 + 2(r+2)/a, 1 + 4/a); exact for rational a and r.
std::pair<Expr, Expr> exceptional_exponents(const Expr& a, const Expr& r);

/// r = 2, a = -1 instance: (c1, c2) = (-7, -3), (gamma1, gamma2) = (-3/2, 1/4).
PdeInstance gss_preset();

/// The r = 2 exceptional instance with symbolic a and the coefficients
/// gamma1 = (a/2)(a+4), gamma2 = -(a/4)(3a+4).
PdeInstance gss_symbolic();

/// Named presets: "gss", "gss-symbolic". Throws InvalidParameterError.
PdeInstance preset(std::string_view name);

/// X = 2xy d/dx + (y^2 - x^2) d/dy - a y u d/du, with a symbolic.
VectorField exceptional_field();
/// X' = x d/dx + y d/dy - (a/2) u d/du.
VectorField scaling_field();
/// Y = y d/dx + x d/dy.
VectorField rotation_like_field();
/// d/dy.
VectorField y_translation_field();

/// Field by name: "X", "Xp" (scaling), "Y", "Dy". Throws InvalidParameterError.
VectorField named_field(std::string_view name);

/// Substitutes the instance's parameter values into the field components.
VectorField bind_parameters(const VectorField& field, const PdeInstance& instance);

/// Moves a jet point onto Delta = 0 by solving for uyy (coefficient 1).
JetPoint project_on_shell(const PdeInstance& instance, JetPoint point);

enum class Verdict { admitted, not_admitted, inconclusive };

std::string_view to_string(Verdict v) noexcept;

struct SymmetryCheckOptions {
  std::size_t samples = 200;
  /// Admitted when every relative on-shell residual is at or below this.
  double tolerance = 1e-9;
  /// Refuted only if some residual reaches this; otherwise inconclusive.
  double refute_threshold = 1e-3;
  std::uint64_t seed = 42;
  JetSampler sampler{};
};

struct SymmetryVerdict {
  Verdict verdict = Verdict::inconclusive;
  bool admitted = false;
  /// Largest |Pr X Delta| / (largest single term magnitude) over samples.
  double max_onshell_residual = 0.0;
  std::size_t sample_count = 0;
  JetPoint worst_point{};
  /// The prolonged expression that was sampled.
  Expr prolonged;
};

/// Randomized on-shell test of Pr^(2) field applied to Delta at points with
/// Delta = 0. Deterministic for a fixed seed.
SymmetryVerdict check_onshell_symmetry(const VectorField& field, const PdeInstance& instance,
                                       const SymmetryCheckOptions& options = {});

}  // namespace liesym
