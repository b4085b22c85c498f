#include "liesym/pde_family.hpp"

#include <algorithm>
#include <cmath>

#include "liesym/calculus.hpp"
#include "liesym/errors.hpp"
#include "liesym/normalize.hpp"
#include "liesym/parser.hpp"

namespace liesym {

namespace {

const Expr& delta_template() {
  static const Expr t = parse("uxx + uyy + a/x*ux - g1*x^r*u^c1 - g2*u^c2");
  return t;
}

bool same_value(const Expr& lhs, const Expr& rhs) {
  if (lhs.is_number() && rhs.is_number()) return lhs == rhs;
  return equal_symbolic(lhs, rhs);
}

}  // namespace

bool PdeInstance::is_numeric() const noexcept {
  return a.is_number() && r.is_number() && c1.is_number() && c2.is_number() && gamma1.is_number() &&
         gamma2.is_number();
}

Env PdeInstance::parameter_env() const {
  if (!is_numeric()) throw InvalidParameterError("instance has symbolic parameters");
  return Env{{"a", a.number().to_double()},   {"r", r.number().to_double()},
             {"c1", c1.number().to_double()}, {"c2", c2.number().to_double()},
             {"g1", gamma1.number().to_double()}, {"g2", gamma2.number().to_double()}};
}

std::map<std::string, Expr, std::less<>> PdeInstance::parameter_bindings() const {
  return {{"a", a}, {"r", r}, {"c1", c1}, {"c2", c2}, {"g1", gamma1}, {"g2", gamma2}};
}

std::pair<Expr, Expr> exceptional_exponents(const Expr& a, const Expr& r) {
  if (a.is_zero()) throw InvalidParameterError("a must be nonzero");
  Expr c1 = Expr(1) + Expr(2) * (r + Expr(2)) / a;
  Expr c2 = Expr(1) + Expr(4) / a;
  return {c1, c2};
}

PdeInstance build_instance(const Expr& a, const Expr& r, const Expr& c1, const Expr& c2,
                           const Expr& gamma1, const Expr& gamma2) {
  if (a.is_zero()) throw InvalidParameterError("a must be nonzero");
  PdeInstance inst{a, r, c1, c2, gamma1, gamma2, Expr(), false};
  inst.delta = substitute(delta_template(), inst.parameter_bindings());
  auto [e1, e2] = exceptional_exponents(a, r);
  inst.is_exceptional = same_value(c1, e1) && same_value(c2, e2);
  return inst;
}

PdeInstance gss_preset() {
  const Expr a(-1);
  const Expr r(2);
  auto [c1, c2] = exceptional_exponents(a, r);
  Expr g1 = a / Expr(2) * (a + Expr(4));
  Expr g2 = -(a / Expr(4)) * (Expr(3) * a + Expr(4));
  return build_instance(a, r, c1, c2, g1, g2);
}

PdeInstance gss_symbolic() {
  const Expr a = sym("a");
  const Expr r(2);
  auto [c1, c2] = exceptional_exponents(a, r);
  Expr g1 = a / Expr(2) * (a + Expr(4));
  Expr g2 = -(a / Expr(4)) * (Expr(3) * a + Expr(4));
  return build_instance(a, r, c1, c2, g1, g2);
}

PdeInstance preset(std::string_view name) {
  if (name == "gss") return gss_preset();
  if (name == "gss-symbolic") return gss_symbolic();
  throw InvalidParameterError("unknown preset '" + std::string(name) + "'");
}

VectorField exceptional_field() { return VectorField::parse("2*x*y", "y^2 - x^2", "-a*y*u"); }

VectorField scaling_field() { return VectorField::parse("x", "y", "-a/2*u"); }

VectorField rotation_like_field() { return VectorField::parse("y", "x", "0"); }

VectorField y_translation_field() { return VectorField::parse("0", "1", "0"); }

VectorField named_field(std::string_view name) {
  if (name == "X") return exceptional_field();
  if (name == "Xp") return scaling_field();
  if (name == "Y") return rotation_like_field();
  if (name == "Dy") return y_translation_field();
  throw InvalidParameterError("unknown vector field '" + std::string(name) + "'");
}

VectorField bind_parameters(const VectorField& field, const PdeInstance& instance) {
  auto b = instance.parameter_bindings();
  return {substitute(field.xi1, b), substitute(field.xi2, b), substitute(field.phi, b)};
}

JetPoint project_on_shell(const PdeInstance& instance, JetPoint point) {
  Env env = instance.parameter_env();
  for (const auto& [k, v] : point.to_env()) env[k] = v;
  point.uyy -= eval_at(instance.delta, env);
  return point;
}

std::string_view to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::admitted: return "admitted";
    case Verdict::not_admitted: return "not_admitted";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

SymmetryVerdict check_onshell_symmetry(const VectorField& field, const PdeInstance& instance,
                                       const SymmetryCheckOptions& options) {
  if (options.samples == 0) throw InvalidParameterError("need at least one sample");
  if (!instance.is_numeric()) throw InvalidParameterError("on-shell check needs a numeric instance");
  if (diff(instance.delta, "uyy") != Expr(1)) throw InvalidParameterError("Delta is not monic in uyy");

  VectorField bound = bind_parameters(field, instance);
  SymmetryVerdict out;
  out.prolonged = apply_prolonged(prolong2(bound), instance.delta);
  const std::vector<Expr> terms = terms_of(out.prolonged);
  const Env params = instance.parameter_env();

  std::mt19937_64 rng(options.seed);
  const std::size_t budget = 10 * options.samples;
  std::size_t attempts = 0;
  while (out.sample_count < options.samples) {
    if (attempts++ >= budget) {
      throw SamplingError("on-shell sampling hit the domain-error retry budget");
    }
    JetPoint p = options.sampler.draw(rng);
    double residual = 0.0;
    try {
      p = project_on_shell(instance, p);
      Env env = params;
      for (const auto& [k, v] : p.to_env()) env[k] = v;
      double total = 0.0;
      double scale = 0.0;
      for (const auto& t : terms) {
        double v = eval_at(t, env);
        total += v;
        scale = std::max(scale, std::fabs(v));
      }
      residual = scale > 0.0 ? std::fabs(total) / scale : std::fabs(total);
    } catch (const DomainError&) {
      continue;
    }
    ++out.sample_count;
    if (!std::isfinite(residual)) residual = INFINITY;
    if (out.sample_count == 1 || residual > out.max_onshell_residual) {
      out.max_onshell_residual = residual;
      out.worst_point = p;
    }
  }
  if (out.max_onshell_residual <= options.tolerance) {
    out.verdict = Verdict::admitted;
  } else if (out.max_onshell_residual >= options.refute_threshold) {
    out.verdict = Verdict::not_admitted;
  } else {
    out.verdict = Verdict::inconclusive;
  }
  out.admitted = out.verdict == Verdict::admitted;
  return out;
}

}  // namespace liesym
