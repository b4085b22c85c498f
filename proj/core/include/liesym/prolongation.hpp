#pragma once

#include <array>
#include <random>
#include <string_view>

#include "liesym/equivalence.hpp"
#include "liesym/evaluate.hpp"
#include "liesym/expr.hpp"

namespace liesym {

/// Second-order jet coordinates, in storage order.
inline constexpr std::array<std::string_view, 8> kJetSymbols = {"x",  "y",   "u",   "ux",
                                                                "uy", "uxx", "uxy", "uyy"};

inline constexpr std::array<std::string_view, 5> kDerivativeSymbols = {"ux", "uy", "uxx", "uxy", "uyy"};

struct JetPoint {
  double x = 1.0;
  double y = 0.0;
  double u = 1.0;
  double ux = 0.0;
  double uy = 0.0;
  double uxx = 0.0;
  double uxy = 0.0;
  double uyy = 0.0;

  Env to_env() const;
  static JetPoint from_env(const Env& env);
};

/// Sampling box for jet points. The defaults keep x away from the a/x
/// singularity and u positive for fractional exponents.
struct JetSampler {
  Interval x{0.5, 2.0};
  Interval y{-0.8, 0.8};
  Interval u{0.5, 2.0};
  Interval first{-1.0, 1.0};
  Interval second{-1.0, 1.0};

  JetPoint draw(std::mt19937_64& rng) const;
};

/// Point vector field xi1 d/dx + xi2 d/dy + phi d/du on (x, y, u)-space.
struct VectorField {
  Expr xi1;
  Expr xi2;
  Expr phi;

  /// Builds a field from three expression strings; rejects derivative symbols.
  static VectorField parse(std::string_view xi1, std::string_view xi2, std::string_view phi);

  /// Throws InvalidParameterError when a component involves ux, ..., uyy.
  void validate() const;

  /// Applies the field as a derivation to a function of (x, y, u).
  Expr apply(const Expr& f) const;

  friend VectorField operator+(const VectorField& a, const VectorField& b);
};

struct ProlongedField {
  VectorField base;
  Expr phi_x;
  Expr phi_y;
  Expr phi_xx;
  Expr phi_xy;
  Expr phi_yy;
};

enum class Direction { x, y };

/// D_x e = e_x + ux e_u + uxx e_ux + uxy e_uy (and the y analogue).
/// Throws OrderOverflowError if e already involves second derivatives.
Expr total_derivative(const Expr& e, Direction direction);

/// Second prolongation by the recursive formula; phi_xy is taken as
/// D_y phi_x - uxx D_y xi1 - uxy D_y xi2.
ProlongedField prolong2(const VectorField& field);

/// Pr^(2) applied to a jet-space expression, expanded.
Expr apply_prolonged(const ProlongedField& field, const Expr& target);

/// Characteristic phi - xi1 ux - xi2 uy.
Expr characteristic(const VectorField& field);

}  // namespace liesym
