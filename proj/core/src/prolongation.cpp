#include "liesym/prolongation.hpp"

#include "liesym/calculus.hpp"
#include "liesym/errors.hpp"
#include "liesym/parser.hpp"

namespace liesym {

namespace {

double draw(const Interval& iv, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(iv.lo, iv.hi);
  return dist(rng);
}

}  // namespace

Env JetPoint::to_env() const {
  return Env{{"x", x},   {"y", y},     {"u", u},     {"ux", ux},
             {"uy", uy}, {"uxx", uxx}, {"uxy", uxy}, {"uyy", uyy}};
}

JetPoint JetPoint::from_env(const Env& env) {
  auto get = [&](std::string_view k) {
    auto it = env.find(k);
    return it == env.end() ? 0.0 : it->second;
  };
  return {get("x"), get("y"), get("u"), get("ux"), get("uy"), get("uxx"), get("uxy"), get("uyy")};
}

JetPoint JetSampler::draw(std::mt19937_64& rng) const {
  JetPoint p;
  p.x = liesym::draw(x, rng);
  p.y = liesym::draw(y, rng);
  p.u = liesym::draw(u, rng);
  p.ux = liesym::draw(first, rng);
  p.uy = liesym::draw(first, rng);
  p.uxx = liesym::draw(second, rng);
  p.uxy = liesym::draw(second, rng);
  p.uyy = liesym::draw(second, rng);
  return p;
}

VectorField VectorField::parse(std::string_view xi1, std::string_view xi2, std::string_view phi) {
  VectorField f{liesym::parse(xi1), liesym::parse(xi2), liesym::parse(phi)};
  f.validate();
  return f;
}

void VectorField::validate() const {
  for (const Expr* c : {&xi1, &xi2, &phi}) {
    for (auto d : kDerivativeSymbols) {
      if (depends_on(*c, d)) {
        throw InvalidParameterError("point vector field component depends on " + std::string(d) +
                                    ": " + to_string(*c));
      }
    }
  }
}

Expr VectorField::apply(const Expr& f) const {
  return expand(make_sum({xi1 * diff(f, "x"), xi2 * diff(f, "y"), phi * diff(f, "u")}));
}

VectorField operator+(const VectorField& a, const VectorField& b) {
  return {a.xi1 + b.xi1, a.xi2 + b.xi2, a.phi + b.phi};
}

Expr total_derivative(const Expr& e, Direction direction) {
  for (auto s : {"uxx", "uxy", "uyy"}) {
    if (depends_on(e, s)) {
      throw OrderOverflowError(std::string("total derivative of an expression involving ") + s +
                               " needs third-order jet coordinates");
    }
  }
  if (direction == Direction::x) {
    return make_sum({diff(e, "x"), sym("ux") * diff(e, "u"), sym("uxx") * diff(e, "ux"),
                     sym("uxy") * diff(e, "uy")});
  }
  return make_sum({diff(e, "y"), sym("uy") * diff(e, "u"), sym("uxy") * diff(e, "ux"),
                   sym("uyy") * diff(e, "uy")});
}

ProlongedField prolong2(const VectorField& field) {
  field.validate();
  const Expr ux = sym("ux");
  const Expr uy = sym("uy");
  const Expr uxx = sym("uxx");
  const Expr uxy = sym("uxy");
  const Expr uyy = sym("uyy");
  auto Dx = [](const Expr& e) { return total_derivative(e, Direction::x); };
  auto Dy = [](const Expr& e) { return total_derivative(e, Direction::y); };

  ProlongedField p;
  p.base = field;
  p.phi_x = expand(Dx(field.phi) - ux * Dx(field.xi1) - uy * Dx(field.xi2));
  p.phi_y = expand(Dy(field.phi) - ux * Dy(field.xi1) - uy * Dy(field.xi2));
  p.phi_xx = expand(Dx(p.phi_x) - uxx * Dx(field.xi1) - uxy * Dx(field.xi2));
  p.phi_xy = expand(Dy(p.phi_x) - uxx * Dy(field.xi1) - uxy * Dy(field.xi2));
  p.phi_yy = expand(Dy(p.phi_y) - uxy * Dy(field.xi1) - uyy * Dy(field.xi2));
  return p;
}

Expr apply_prolonged(const ProlongedField& field, const Expr& target) {
  return expand(make_sum({
      field.base.xi1 * diff(target, "x"),
      field.base.xi2 * diff(target, "y"),
      field.base.phi * diff(target, "u"),
      field.phi_x * diff(target, "ux"),
      field.phi_y * diff(target, "uy"),
      field.phi_xx * diff(target, "uxx"),
      field.phi_xy * diff(target, "uxy"),
      field.phi_yy * diff(target, "uyy"),
  }));
}

Expr characteristic(const VectorField& field) {
  return field.phi - field.xi1 * sym("ux") - field.xi2 * sym("uy");
}

}  // namespace liesym
