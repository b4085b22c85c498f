#include "liesym/orbit.hpp"

#include <algorithm>
#include <cmath>

#include "liesym/calculus.hpp"
#include "liesym/errors.hpp"
#include "liesym/evaluate.hpp"
#include "liesym/parser.hpp"

namespace liesym {

namespace {

double number_value(const Expr& e, const char* what) {
  if (!e.is_number()) throw InvalidParameterError(std::string(what) + " must be numeric here");
  return e.number().to_double();
}

bool base_domain(double x, double y) { return std::fabs(x) > std::fabs(y); }

}  // namespace

double conformal_factor(double x, double y, double lambda) noexcept {
  return 1.0 + lambda * lambda * (x * x + y * y) + 2.0 * lambda * y;
}

Expr conformal_factor_expr(const Expr& lambda) {
  return substitute(parse("1 + lam^2*(x^2 + y^2) + 2*lam*y"), {{"lam", lambda}});
}

Point2 map_point(double x, double y, double lambda) {
  double c = conformal_factor(x, y, lambda);
  if (c == 0.0) throw DomainError("map_point: singular point, C(x, y, lambda) = 0");
  return {x / c, (y + lambda * (x * x + y * y)) / c};
}

std::pair<Expr, Expr> mapped_coordinates_expr(const Expr& lambda) {
  Expr c_inv = pow(conformal_factor_expr(lambda), Expr(-1));
  Expr xt = sym("x") * c_inv;
  Expr yt = substitute(parse("y + lam*(x^2 + y^2)"), {{"lam", lambda}}) * c_inv;
  return {xt, yt};
}

ClosedFormSolution base_solution(const Expr& a, DomainPolicy policy) {
  if (a.is_zero()) throw InvalidParameterError("a must be nonzero");
  Expr exponent = -a / Expr(4);
  ClosedFormSolution sol;
  sol.expr = pow(parse("x^2 - y^2"), exponent);
  sol.label = "base(a=" + to_string(a) + ")";
  bool polynomial = is_integer_number(exponent) && exponent.number().sign() > 0;
  if (policy == DomainPolicy::analytic && polynomial) {
    sol.domain = [](double, double) { return true; };
  } else {
    sol.domain = base_domain;
  }
  return sol;
}

ClosedFormSolution family_solution(const Expr& a, const Expr& lambda) {
  if (a.is_zero()) throw InvalidParameterError("a must be nonzero");
  double lam = number_value(lambda, "lambda");
  ClosedFormSolution sol;
  Expr inner = substitute(parse("x^2 - (y + lam*(x^2 + y^2))^2"), {{"lam", lambda}});
  sol.expr = pow(inner, -a / Expr(4));
  sol.label = "family(a=" + to_string(a) + ", lambda=" + to_string(lambda) + ")";
  if (lam > 0.0) {
    RegionGeometry g = region(lam);
    sol.domain = [g](double x, double y) { return g.contains(x, y); };
  } else if (lam < 0.0) {
    RegionGeometry g = region(-lam);
    sol.domain = [g](double x, double y) { return g.contains(x, -y); };
  } else {
    sol.domain = base_domain;
  }
  return sol;
}

ClosedFormSolution transform_solution(const ClosedFormSolution& solution, const Expr& lambda,
                                      const Expr& a) {
  double lam = number_value(lambda, "lambda");
  auto [xt, yt] = mapped_coordinates_expr(lambda);
  ClosedFormSolution out;
  Expr composed = substitute(solution.expr, {{"x", xt}, {"y", yt}});
  out.expr = pow(conformal_factor_expr(lambda), -a / Expr(2)) * composed;
  out.label = "transform(" + solution.label + ", lambda=" + to_string(lambda) + ")";
  auto inner = solution.domain;
  out.domain = [inner, lam](double x, double y) {
    if (!(conformal_factor(x, y, lam) > 0.0)) return false;
    Point2 p = map_point(x, y, lam);
    return !inner || inner(p.x, p.y);
  };
  return out;
}

bool RegionGeometry::contains(double x, double y) const noexcept {
  double shifted = y + lambda * (x * x + y * y);
  return (x - shifted) * (x + shifted) > 0.0;
}

bool RegionGeometry::in_disk1(double x, double y) const noexcept {
  double dx = x - center1.x;
  double dy = y - center1.y;
  return dx * dx + dy * dy < radius * radius;
}

bool RegionGeometry::in_disk2(double x, double y) const noexcept {
  double dx = x - center2.x;
  double dy = y - center2.y;
  return dx * dx + dy * dy < radius * radius;
}

bool RegionGeometry::in_symmetric_difference(double x, double y) const noexcept {
  return in_disk1(x, y) != in_disk2(x, y);
}

RegionGeometry region(double lambda) {
  if (!(lambda > 0.0)) throw InvalidParameterError("region: lambda must be positive");
  RegionGeometry g;
  g.lambda = lambda;
  double h = 1.0 / (2.0 * lambda);
  g.center1 = {h, -h};
  g.center2 = {-h, -h};
  g.radius = 1.0 / (std::sqrt(2.0) * lambda);
  return g;
}

double GridSpec::x_at(std::size_t i) const noexcept {
  if (nx <= 1) return x_min;
  return x_min + (x_max - x_min) * static_cast<double>(i) / static_cast<double>(nx - 1);
}

double GridSpec::y_at(std::size_t j) const noexcept {
  if (ny <= 1) return y_min;
  return y_min + (y_max - y_min) * static_cast<double>(j) / static_cast<double>(ny - 1);
}

GridSpec bounding_grid(const RegionGeometry& g, std::size_t nx, std::size_t ny) {
  return {g.center2.x - g.radius, g.center1.x + g.radius, g.center1.y - g.radius,
          g.center1.y + g.radius, nx, ny};
}

SolutionJet solution_jet(const Expr& u) {
  SolutionJet j;
  j.u = u;
  j.ux = diff(u, "x");
  j.uy = diff(u, "y");
  j.uxx = diff(j.ux, "x");
  j.uxy = diff(j.ux, "y");
  j.uyy = diff(j.uy, "y");
  return j;
}

ResidualField residual_grid(const PdeInstance& instance, const ClosedFormSolution& solution,
                            const GridSpec& grid) {
  if (grid.nx < 2 || grid.ny < 2 || !(grid.x_max > grid.x_min) || !(grid.y_max > grid.y_min)) {
    throw InvalidParameterError("grid needs at least 2x2 nodes and positive spacing");
  }
  const SolutionJet jet = solution_jet(solution.expr);
  const std::vector<Expr> terms = terms_of(instance.delta);
  const Env params = instance.parameter_env();

  ResidualField field;
  field.grid = grid;
  field.nodes.reserve(grid.nx * grid.ny);
  for (std::size_t j = 0; j < grid.ny; ++j) {
    for (std::size_t i = 0; i < grid.nx; ++i) {
      ResidualNode node;
      node.x = grid.x_at(i);
      node.y = grid.y_at(j);
      if (solution.contains(node.x, node.y)) {
        try {
          Env at = params;
          at["x"] = node.x;
          at["y"] = node.y;
          Env env = at;
          env["u"] = eval_at(jet.u, at);
          env["ux"] = eval_at(jet.ux, at);
          env["uy"] = eval_at(jet.uy, at);
          env["uxx"] = eval_at(jet.uxx, at);
          env["uxy"] = eval_at(jet.uxy, at);
          env["uyy"] = eval_at(jet.uyy, at);
          double total = 0.0;
          double scale = 1.0;
          for (const auto& t : terms) {
            double v = eval_at(t, env);
            total += v;
            scale = std::max(scale, std::fabs(v));
          }
          node.u = env["u"];
          node.residual = std::fabs(total) / scale;
          node.in_domain = std::isfinite(node.residual);
        } catch (const DomainError&) {
          node.in_domain = false;
        }
      }
      if (node.in_domain) {
        ++field.in_domain_count;
        field.sup_residual = std::max(field.sup_residual, node.residual);
      } else {
        node.u = 0.0;
        node.residual = 0.0;
      }
      field.nodes.push_back(node);
    }
  }
  return field;
}

FlowCheck flow_generator_check(double x, double y, double h, const ClosedFormSolution* solution, double a) {
  if (!(h > 0.0 && h <= 1e-3)) throw InvalidParameterError("flow check step must lie in (0, 1e-3]");
  FlowCheck out;
  out.x = x;
  out.y = y;
  Point2 plus = map_point(x, y, h);
  Point2 minus = map_point(x, y, -h);
  out.dx_numeric = (plus.x - minus.x) / (2.0 * h);
  out.dy_numeric = (plus.y - minus.y) / (2.0 * h);
  out.dx_expected = -2.0 * x * y;
  out.dy_expected = x * x - y * y;
  auto err = [](double num, double exact) { return std::fabs(num - exact) / std::max(1.0, std::fabs(exact)); };
  out.max_error = std::max(err(out.dx_numeric, out.dx_expected), err(out.dy_numeric, out.dy_expected));
  if (solution) {
    out.has_solution = true;
    Env params{{"a", a}};
    auto u_tilde = [&](double lam) {
      Point2 p = map_point(x, y, lam);
      Env env = params;
      env["x"] = p.x;
      env["y"] = p.y;
      return std::pow(conformal_factor(x, y, lam), -a / 2.0) * eval_at(solution->expr, env);
    };
    out.du_numeric = (u_tilde(h) - u_tilde(-h)) / (2.0 * h);
    Env at = params;
    at["x"] = x;
    at["y"] = y;
    double u = eval_at(solution->expr, at);
    double ux = eval_at(diff(solution->expr, "x"), at);
    double uy = eval_at(diff(solution->expr, "y"), at);
    out.du_expected = -a * y * u - 2.0 * x * y * ux + (x * x - y * y) * uy;
    out.max_error = std::max(out.max_error, err(out.du_numeric, out.du_expected));
  }
  return out;
}

}  // namespace liesym
