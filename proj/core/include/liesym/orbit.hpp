#pragma once

#include <functional>
#include <string>
#include <vector>

#include "liesym/expr.hpp"
#include "liesym/pde_family.hpp"

namespace liesym {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

/// C(x, y, lambda) = 1 + lambda^2 (x^2 + y^2) + 2 lambda y.
double conformal_factor(double x, double y, double lambda) noexcept;
Expr conformal_factor_expr(const Expr& lambda);

/// Finite action of the exceptional symmetry on the plane:
/// (x / C, (y + lambda (x^2 + y^2)) / C). Throws DomainError where C = 0.
Point2 map_point(double x, double y, double lambda);

/// Symbolic (x~, y~) for the given group parameter.
std::pair<Expr, Expr> mapped_coordinates_expr(const Expr& lambda);

/// Closed-form u(x, y) together with the open set where it is real-valued.
struct ClosedFormSolution {
  Expr expr;
  std::function<bool(double, double)> domain;
  std::string label;

  bool contains(double x, double y) const { return !domain || domain(x, y); }
};

/// Which domain base_solution reports when -a/4 is a positive integer and the
/// power is a polynomial.
enum class DomainPolicy {
  /// |x| > |y| regardless of a.
  restricted,
  /// Whole plane when -a/4 is a positive integer, |x| > |y| otherwise.
  analytic,
};

/// u = (x^2 - y^2)^(-a/4).
ClosedFormSolution base_solution(const Expr& a, DomainPolicy policy = DomainPolicy::restricted);

/// u = [x^2 - (y + lambda (x^2 + y^2))^2]^(-a/4). The domain is the
/// double-D region for lambda > 0, its mirror y -> -y for lambda < 0 and
/// |x| > |y| for lambda = 0. `lambda` must be a number.
ClosedFormSolution family_solution(const Expr& a, const Expr& lambda);

/// u~(x, y) = C^(-a/2) u(x~, y~), canonicalized but not normalized. The
/// domain is C > 0 intersected with the preimage of u's domain.
ClosedFormSolution transform_solution(const ClosedFormSolution& solution, const Expr& lambda,
                                      const Expr& a);

/// The two disks of radius 1/(sqrt(2) lambda) centred at (+-1/(2 lambda), -1/(2 lambda)).
struct RegionGeometry {
  double lambda = 1.0;
  Point2 center1;
  Point2 center2;
  double radius = 0.0;

  /// (x - Y)(x + Y) > 0 with Y = y + lambda (x^2 + y^2).
  bool contains(double x, double y) const noexcept;
  bool in_disk1(double x, double y) const noexcept;
  bool in_disk2(double x, double y) const noexcept;
  /// Inside exactly one of the two open disks.
  bool in_symmetric_difference(double x, double y) const noexcept;
};

/// Throws InvalidParameterError for lambda <= 0.
RegionGeometry region(double lambda);

struct GridSpec {
  double x_min = 0.0;
  double x_max = 1.0;
  double y_min = 0.0;
  double y_max = 1.0;
  std::size_t nx = 2;
  std::size_t ny = 2;

  double x_at(std::size_t i) const noexcept;
  double y_at(std::size_t j) const noexcept;
};

/// Grid spanning the bounding box of both disks.
GridSpec bounding_grid(const RegionGeometry& geometry, std::size_t nx, std::size_t ny);

struct ResidualNode {
  double x = 0.0;
  double y = 0.0;
  bool in_domain = false;
  double u = 0.0;
  double residual = 0.0;
};

/// Nodes in row-major order: y outer, x inner.
struct ResidualField {
  GridSpec grid;
  std::vector<ResidualNode> nodes;
  std::size_t in_domain_count = 0;
  /// Max residual over in-domain nodes; 0 when there are none.
  double sup_residual = 0.0;

  bool empty_domain() const noexcept { return in_domain_count == 0; }
};

/// u and its derivatives up to order two, by symbolic differentiation.
struct SolutionJet {
  Expr u, ux, uy, uxx, uxy, uyy;
};
SolutionJet solution_jet(const Expr& u);

/// Residual of Delta at each node with the exact derivatives substituted,
/// scaled as |Delta| / max(1, largest term of Delta). Nodes outside the
/// solution's domain, or where evaluation leaves the real domain, are masked.
ResidualField residual_grid(const PdeInstance& instance, const ClosedFormSolution& solution,
                            const GridSpec& grid);

struct FlowCheck {
  double x = 0.0;
  double y = 0.0;
  double dx_numeric = 0.0, dx_expected = 0.0;
  double dy_numeric = 0.0, dy_expected = 0.0;
  bool has_solution = false;
  double du_numeric = 0.0, du_expected = 0.0;
  /// Largest |numeric - expected| / max(1, |expected|).
  double max_error = 0.0;
};

/// Central differences in lambda at lambda = 0 of the point map and, when a
/// solution is given, of u~(x, y). Expected values are -2xy, x^2 - y^2 and
/// the characteristic of X on the solution jet. Requires 0 < h <= 1e-3.
FlowCheck flow_generator_check(double x, double y, double h, const ClosedFormSolution* solution = nullptr,
                               double a = 0.0);

}  // namespace liesym
