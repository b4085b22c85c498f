#include "liesym_cli/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "liesym/calculus.hpp"
#include "liesym/errors.hpp"
#include "liesym/normalize.hpp"
#include "liesym/parser.hpp"
#include "liesym/pde_family.hpp"
#include "liesym/reduction.hpp"

namespace liesym::cli {

namespace {

using json = nlohmann::ordered_json;

struct CommonFlags {
  std::uint64_t seed = 42;
  std::string output;
};

struct InstanceFlags {
  std::string preset;
  std::string a, r, c1, c2, g1, g2;
};

// Decimal or rational literal, kept exact.
Expr parse_number(const std::string& text, std::string_view flag) {
  Expr e;
  try {
    e = parse(text, ParseOptions{true, {}});
  } catch (const Error&) {
    throw InvalidParameterError(std::string(flag) + ": not a number: '" + text + "'");
  }
  if (!e.is_number()) throw InvalidParameterError(std::string(flag) + ": not a number: '" + text + "'");
  return e;
}

json number_json(const Expr& e) {
  if (!e.is_number()) return to_string(e);
  if (auto i = e.number().as_integer(); i && e.number().is_exact()) return *i;
  return e.number().to_double();
}

PdeInstance resolve_instance(const InstanceFlags& f, std::string_view fallback_preset) {
  auto pick = [](const std::string& text, const char* flag, const Expr& dflt) {
    return text.empty() ? dflt : parse_number(text, flag);
  };
  std::string name = f.preset;
  bool any_param = !(f.a.empty() && f.r.empty() && f.c1.empty() && f.c2.empty() && f.g1.empty() && f.g2.empty());
  if (name.empty() && (!any_param || (f.a.empty() && f.r.empty()))) name = std::string(fallback_preset);
  if (!name.empty()) {
    PdeInstance base = preset(name);
    if (!any_param) return base;
    Expr a = pick(f.a, "--a", base.a);
    Expr r = pick(f.r, "--r", base.r);
    return build_instance(a, r, pick(f.c1, "--c1", base.c1), pick(f.c2, "--c2", base.c2),
                          pick(f.g1, "--g1", base.gamma1), pick(f.g2, "--g2", base.gamma2));
  }
  if (f.a.empty() || f.r.empty()) throw InvalidParameterError("give --preset or both --a and --r");
  Expr a = parse_number(f.a, "--a");
  Expr r = parse_number(f.r, "--r");
  auto [e1, e2] = exceptional_exponents(a, r);
  CandidateProfile p = candidate_profile(a);
  return build_instance(a, r, pick(f.c1, "--c1", e1), pick(f.c2, "--c2", e2), pick(f.g1, "--g1", p.gamma1),
                        pick(f.g2, "--g2", p.gamma2));
}

json instance_json(const PdeInstance& inst) {
  return json{{"a", to_string(inst.a)},         {"r", to_string(inst.r)},
              {"c1", to_string(inst.c1)},       {"c2", to_string(inst.c2)},
              {"gamma1", to_string(inst.gamma1)}, {"gamma2", to_string(inst.gamma2)},
              {"exceptional", inst.is_exceptional}, {"residual", to_string(inst.delta)}};
}

json jet_json(const JetPoint& p) {
  return json{{"x", p.x},     {"y", p.y},     {"u", p.u},     {"ux", p.ux},
              {"uy", p.uy},   {"uxx", p.uxx}, {"uxy", p.uxy}, {"uyy", p.uyy}};
}

std::string timestamp() {
  std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Pretty-printed with one key per line, so the timestamp sits alone.
std::string render(json report) {
  report["generated_at"] = timestamp();
  return report.dump(2) + "\n";
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InvalidParameterError("cannot open --output '" + path + "'");
  f << text;
  if (!f) throw InvalidParameterError("cannot write --output '" + path + "'");
}

void emit(const json& report, const CommonFlags& common, std::ostream& out) {
  std::string text = render(report);
  if (common.output.empty()) {
    out << text;
  } else {
    write_file(common.output, text);
  }
}

// Sub-command handlers. Each returns an exit code.

int cmd_exponents(const std::string& a_text, const std::string& r_text, const CommonFlags& common,
                  std::ostream& out) {
  Expr a = parse_number(a_text, "--a");
  Expr r = parse_number(r_text, "--r");
  auto [c1, c2] = exceptional_exponents(a, r);
  json report{{"command", "exponents"}, {"a", number_json(a)}, {"r", number_json(r)},
              {"c1", number_json(c1)},  {"c2", number_json(c2)},
              {"exact", {{"c1", to_string(c1)}, {"c2", to_string(c2)}}}};
  emit(report, common, out);
  return kVerified;
}

struct SymmetryFlags {
  InstanceFlags instance;
  std::string field;
  std::string xi1, xi2, phi;
  std::size_t samples = 200;
  double tolerance = 1e-9;
};

int cmd_check_symmetry(const SymmetryFlags& f, const CommonFlags& common, std::ostream& out) {
  PdeInstance inst = resolve_instance(f.instance, "gss");
  bool custom = !(f.xi1.empty() && f.xi2.empty() && f.phi.empty());
  if (custom && !f.field.empty()) throw InvalidParameterError("--field excludes --xi1/--xi2/--phi");
  if (custom && (f.xi1.empty() || f.xi2.empty() || f.phi.empty())) {
    throw InvalidParameterError("--xi1, --xi2 and --phi go together");
  }
  VectorField field = custom ? VectorField::parse(f.xi1, f.xi2, f.phi) : named_field(f.field.empty() ? "X" : f.field);
  field.validate();
  VectorField bound = bind_parameters(field, inst);
  SymmetryCheckOptions opts;
  opts.samples = f.samples;
  opts.tolerance = f.tolerance;
  opts.seed = common.seed;
  SymmetryVerdict v = check_onshell_symmetry(bound, inst, opts);
  json report{{"command", "check-symmetry"},
              {"instance", instance_json(inst)},
              {"field", {{"name", custom ? "custom" : (f.field.empty() ? "X" : f.field)},
                         {"xi1", to_string(bound.xi1)},
                         {"xi2", to_string(bound.xi2)},
                         {"phi", to_string(bound.phi)}}},
              {"seed", common.seed},
              {"samples", v.sample_count},
              {"tolerance", f.tolerance},
              {"verdict", std::string(to_string(v.verdict))},
              {"admitted", v.admitted},
              {"max_onshell_residual", v.max_onshell_residual},
              {"worst_point", jet_json(v.worst_point)}};
  emit(report, common, out);
  return v.admitted ? kVerified : kRefuted;
}

struct TransformFlags {
  std::string a = "-1";
  std::string lambda;
  std::string x, y;
  double tolerance = 1e-12;
};

int cmd_transform(const TransformFlags& f, const CommonFlags& common, std::ostream& out) {
  Expr a = parse_number(f.a, "--a");
  Expr lambda = parse_number(f.lambda, "--lambda");
  ClosedFormSolution base = base_solution(a);
  ClosedFormSolution moved = transform_solution(base, lambda, a);
  ClosedFormSolution family = family_solution(a, lambda);
  auto [xt, yt] = mapped_coordinates_expr(lambda);
  json report{{"command", "transform"},
              {"a", to_string(a)},
              {"lambda", to_string(lambda)},
              {"mapped_x", to_string(xt)},
              {"mapped_y", to_string(yt)},
              {"conformal_factor", to_string(conformal_factor_expr(lambda))},
              {"transformed_solution", to_string(moved.expr)},
              {"family_solution", to_string(family.expr)},
              {"symbolically_equal", equal_symbolic(moved.expr, family.expr)}};
  int code = kVerified;
  if (f.x.empty() != f.y.empty()) throw InvalidParameterError("--x and --y go together");
  if (!f.x.empty()) {
    double x = parse_number(f.x, "--x").number().to_double();
    double y = parse_number(f.y, "--y").number().to_double();
    double lam = lambda.number().to_double();
    json point{{"x", x}, {"y", y}, {"conformal_factor", conformal_factor(x, y, lam)}};
    if (conformal_factor(x, y, lam) != 0.0) {
      Point2 p = map_point(x, y, lam);
      point["mapped"] = {{"x", p.x}, {"y", p.y}};
    }
    bool inside = moved.contains(x, y) && family.contains(x, y);
    point["in_domain"] = inside;
    if (inside) {
      Env env{{"x", x}, {"y", y}};
      double u1 = eval_at(moved.expr, env);
      double u2 = eval_at(family.expr, env);
      double rel = std::fabs(u1 - u2) / std::max(1.0, std::max(std::fabs(u1), std::fabs(u2)));
      point["transformed_value"] = u1;
      point["family_value"] = u2;
      point["relative_difference"] = rel;
      point["agree"] = rel <= f.tolerance;
      if (rel > f.tolerance) code = kRefuted;
    }
    report["point"] = point;
  }
  emit(report, common, out);
  return code;
}

struct GridFlags {
  InstanceFlags instance;
  std::string solution = "family";
  std::string lambda = "1";
  std::size_t nx = 100;
  std::size_t ny = 100;
  std::string x_min, x_max, y_min, y_max;
  double tolerance = 1e-9;
};

int cmd_residual_grid(const GridFlags& f, const CommonFlags& common, std::ostream& out) {
  PdeInstance inst = resolve_instance(f.instance, "gss");
  if (!inst.is_numeric()) throw InvalidParameterError("residual-grid needs a numeric instance");
  if (f.nx < 2 || f.ny < 2) throw InvalidParameterError("--nx and --ny must be at least 2");
  Expr lambda = parse_number(f.lambda, "--lambda");
  double lam = lambda.number().to_double();

  ClosedFormSolution sol;
  if (f.solution == "base") {
    sol = base_solution(inst.a);
  } else if (f.solution == "family") {
    sol = family_solution(inst.a, lambda);
  } else if (f.solution == "transformed") {
    sol = transform_solution(base_solution(inst.a), lambda, inst.a);
  } else {
    throw InvalidParameterError("--solution must be base, family or transformed");
  }

  GridSpec grid;
  int given = !f.x_min.empty() + !f.x_max.empty() + !f.y_min.empty() + !f.y_max.empty();
  if (given == 4) {
    grid = GridSpec{parse_number(f.x_min, "--x-min").number().to_double(),
                    parse_number(f.x_max, "--x-max").number().to_double(),
                    parse_number(f.y_min, "--y-min").number().to_double(),
                    parse_number(f.y_max, "--y-max").number().to_double(), f.nx, f.ny};
    if (!(grid.x_min < grid.x_max) || !(grid.y_min < grid.y_max)) throw InvalidParameterError("empty grid box");
  } else if (given != 0) {
    throw InvalidParameterError("--x-min, --x-max, --y-min and --y-max go together");
  } else if (f.solution == "base" || lam == 0.0) {
    grid = GridSpec{0.05, 2.0, -1.5, 1.5, f.nx, f.ny};
  } else {
    grid = bounding_grid(region(std::fabs(lam)), f.nx, f.ny);
    if (lam < 0) grid = GridSpec{grid.x_min, grid.x_max, -grid.y_max, -grid.y_min, f.nx, f.ny};
  }

  ResidualField field = residual_grid(inst, sol, grid);
  std::string verdict = field.empty_domain() ? "empty_domain" : (field.sup_residual <= f.tolerance ? "solves" : "fails");
  json trailer{{"command", "residual-grid"},
               {"instance", instance_json(inst)},
               {"solution", f.solution},
               {"solution_expr", to_string(sol.expr)},
               {"lambda", to_string(lambda)},
               {"grid", {{"x_min", grid.x_min}, {"x_max", grid.x_max}, {"y_min", grid.y_min},
                         {"y_max", grid.y_max}, {"nx", grid.nx}, {"ny", grid.ny}}},
               {"nodes", field.nodes.size()},
               {"in_domain", field.in_domain_count},
               {"sup_residual", field.sup_residual},
               {"tolerance", f.tolerance},
               {"verdict", verdict}};
  if (common.output.empty()) {
    emit_csv(field, out);
    out << "\n" << render(trailer);
  } else {
    std::ostringstream csv;
    emit_csv(field, csv);
    write_file(common.output, csv.str());
    trailer["csv"] = common.output;
    out << render(trailer);
  }
  return verdict == "solves" ? kVerified : kRefuted;
}

int cmd_region(const std::string& lambda_text, std::size_t samples, const CommonFlags& common, std::ostream& out) {
  double lam = parse_number(lambda_text, "--lambda").number().to_double();
  RegionGeometry g = region(lam);
  GridSpec box = bounding_grid(g, 2, 2);
  double padx = 0.1 * (box.x_max - box.x_min);
  double pady = 0.1 * (box.y_max - box.y_min);
  std::mt19937_64 rng(common.seed);
  std::uniform_real_distribution<double> dx(box.x_min - padx, box.x_max + padx);
  std::uniform_real_distribution<double> dy(box.y_min - pady, box.y_max + pady);
  std::size_t mismatches = 0;
  std::size_t inside = 0;
  for (std::size_t i = 0; i < samples; ++i) {
    double x = dx(rng);
    double y = dy(rng);
    bool algebraic = g.contains(x, y);
    if (algebraic != g.in_symmetric_difference(x, y)) ++mismatches;
    if (algebraic) ++inside;
  }
  json report{{"command", "region"},
              {"lambda", lam},
              {"center1", {g.center1.x, g.center1.y}},
              {"center2", {g.center2.x, g.center2.y}},
              {"radius", g.radius},
              {"seed", common.seed},
              {"samples", samples},
              {"inside", inside},
              {"mismatches", mismatches}};
  emit(report, common, out);
  return mismatches == 0 ? kVerified : kRefuted;
}

int cmd_reduce(const InstanceFlags& f, bool symbolic, const CommonFlags& common, std::ostream& out) {
  InstanceFlags flags = f;
  if (symbolic) {
    if (!flags.preset.empty() && flags.preset != "gss-symbolic") {
      throw InvalidParameterError("--symbolic conflicts with --preset " + flags.preset);
    }
    flags.preset = "gss-symbolic";
  }
  PdeInstance inst = resolve_instance(flags, "gss");
  ReducedEquation red = reduce_to_invariant(inst);
  SeparatedOdes odes = split_by_x2(red);
  CandidateProfile p = candidate_profile(inst.a);
  Expr res_a = verify_ode(odes.ode_a, p.v);
  Expr res_b = verify_ode(odes.ode_b, p.v);
  bool split_exact = equal_symbolic(odes.ode_a + sym("x") * sym("x") * odes.ode_b, red.expr);
  bool ok = res_a.is_zero() && res_b.is_zero();
  json report{{"command", "reduce"},
              {"instance", instance_json(inst)},
              {"reduced", to_string(red.expr)},
              {"ode_a", to_string(odes.ode_a)},
              {"ode_b", to_string(odes.ode_b)},
              {"split_exact", split_exact},
              {"profile", to_string(p.v)},
              {"profile_gamma1", to_string(p.gamma1)},
              {"profile_gamma2", to_string(p.gamma2)},
              {"residual_a", to_string(res_a)},
              {"residual_b", to_string(res_b)},
              {"verdict", ok ? "common solution" : "profile fails"}};
  emit(report, common, out);
  return ok && split_exact ? kVerified : kRefuted;
}

json stats_json(const RestrictedStats& s) {
  return json{{"max_abs", s.max_abs},
              {"mean_abs", s.mean_abs},
              {"samples", s.samples},
              {"singular_resamples", s.singular_resamples},
              {"max_constraint_residual", s.max_constraint_residual}};
}

int cmd_weak_cs(const InstanceFlags& f, std::size_t samples, bool consequences, const CommonFlags& common,
                std::ostream& out) {
  PdeInstance inst = resolve_instance(f, "gss");
  if (!inst.is_numeric()) throw InvalidParameterError("weak-cs needs a numeric instance");
  WeakCsOptions opts;
  opts.eval.samples = samples;
  opts.eval.seed = common.seed;
  opts.differential_consequences = consequences;
  WeakCsReport rep = weak_cs_report(inst, opts);
  json stages = json::array();
  for (const auto& s : rep.stages) {
    stages.push_back(json{{"name", s.name},
                          {"target", s.target},
                          {"constraints", s.constraints},
                          {"statistics", stats_json(s.stats)},
                          {"outcome", s.outcome},
                          {"expected", s.expected}});
  }
  json report{{"command", "weak-cs"},
              {"instance", instance_json(inst)},
              {"seed", common.seed},
              {"stages", stages},
              {"reduced", to_string(rep.reduced)},
              {"ode_a", to_string(rep.ode_a)},
              {"ode_b", to_string(rep.ode_b)},
              {"profile", to_string(rep.profile)},
              {"coefficients_match", rep.coefficients_match},
              {"residual_a", to_string(rep.residual_a)},
              {"residual_b", to_string(rep.residual_b)},
              {"notes", rep.notes},
              {"verdicts", rep.verdicts},
              {"confirmed", rep.confirmed}};
  emit(report, common, out);
  return rep.confirmed ? kVerified : kRefuted;
}

void add_common(CLI::App* cmd, CommonFlags& common) {
  cmd->add_option("--seed", common.seed, "RNG seed (LIESYM_SEED overrides)")->capture_default_str();
  cmd->add_option("--output", common.output, "write the report here instead of stdout");
}

void add_instance(CLI::App* cmd, InstanceFlags& f) {
  cmd->add_option("--preset", f.preset, "gss or gss-symbolic")->check(CLI::IsMember({"gss", "gss-symbolic"}));
  cmd->add_option("--a", f.a, "coefficient a (decimal or p/q)");
  cmd->add_option("--r", f.r, "power of x");
  cmd->add_option("--c1", f.c1, "exponent of u in the x^r term");
  cmd->add_option("--c2", f.c2, "exponent of u in the second term");
  cmd->add_option("--g1", f.g1, "gamma1");
  cmd->add_option("--g2", f.g2, "gamma2");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lie symmetry checks for uxx + uyy + (a/x) ux = g1 x^r u^c1 + g2 u^c2", "liesym"};
  app.require_subcommand(1, 1);

  CommonFlags common;

  std::string exp_a, exp_r;
  auto* exponents = app.add_subcommand("exponents", "exponents (c1, c2) admitting the exceptional symmetry");
  exponents->add_option("--a", exp_a)->required();
  exponents->add_option("--r", exp_r)->required();
  add_common(exponents, common);

  SymmetryFlags sym_flags;
  auto* check = app.add_subcommand("check-symmetry", "randomized on-shell symmetry test");
  add_instance(check, sym_flags.instance);
  check->add_option("--field", sym_flags.field, "X, Xp, Y or Dy")->check(CLI::IsMember({"X", "Xp", "Y", "Dy"}));
  check->add_option("--xi1", sym_flags.xi1, "custom field: x component");
  check->add_option("--xi2", sym_flags.xi2, "custom field: y component");
  check->add_option("--phi", sym_flags.phi, "custom field: u component");
  check->add_option("--samples", sym_flags.samples)->capture_default_str()->check(CLI::PositiveNumber);
  check->add_option("--tolerance", sym_flags.tolerance)->capture_default_str();
  add_common(check, common);

  TransformFlags tf;
  auto* transform = app.add_subcommand("transform", "group action on the base solution");
  transform->add_option("--a", tf.a)->capture_default_str();
  transform->add_option("--lambda", tf.lambda)->required();
  transform->add_option("--x", tf.x, "evaluate at this point");
  transform->add_option("--y", tf.y);
  transform->add_option("--tolerance", tf.tolerance)->capture_default_str();
  add_common(transform, common);

  GridFlags gf;
  auto* grid = app.add_subcommand("residual-grid", "PDE residual of a closed-form solution on a grid");
  add_instance(grid, gf.instance);
  grid->add_option("--solution", gf.solution, "base, family or transformed")
      ->capture_default_str()
      ->check(CLI::IsMember({"base", "family", "transformed"}));
  grid->add_option("--lambda", gf.lambda)->capture_default_str();
  grid->add_option("--nx", gf.nx)->capture_default_str();
  grid->add_option("--ny", gf.ny)->capture_default_str();
  grid->add_option("--x-min", gf.x_min);
  grid->add_option("--x-max", gf.x_max);
  grid->add_option("--y-min", gf.y_min);
  grid->add_option("--y-max", gf.y_max);
  grid->add_option("--tolerance", gf.tolerance)->capture_default_str();
  add_common(grid, common);

  std::string region_lambda;
  std::size_t region_samples = 10000;
  auto* reg = app.add_subcommand("region", "membership predicate vs. the two-disk description");
  reg->add_option("--lambda", region_lambda)->required();
  reg->add_option("--samples", region_samples)->capture_default_str()->check(CLI::PositiveNumber);
  add_common(reg, common);

  InstanceFlags reduce_flags;
  bool symbolic = false;
  auto* reduce = app.add_subcommand("reduce", "reduction by s = x^2 - y^2 and the separated ODEs");
  add_instance(reduce, reduce_flags);
  reduce->add_flag("--symbolic", symbolic, "use the instance with symbolic a");
  add_common(reduce, common);

  InstanceFlags wcs_flags;
  std::size_t wcs_samples = 200;
  bool consequences = false;
  auto* weak = app.add_subcommand("weak-cs", "conditional-symmetry chain for Y");
  add_instance(weak, wcs_flags);
  weak->add_option("--samples", wcs_samples)->capture_default_str()->check(CLI::PositiveNumber);
  weak->add_flag("--consequences", consequences, "also impose Dx(Y u) = Dy(Y u) = 0");
  add_common(weak, common);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kVerified;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      // --help on a subcommand
      out << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
      return kVerified;
    }
    err << "liesym: " << e.what() << "\n";
    return kUsage;
  }

  if (const char* env = std::getenv("LIESYM_SEED"); env != nullptr && *env != '\0') {
    try {
      std::size_t used = 0;
      std::string text(env);
      if (text.front() == '-') throw std::invalid_argument(text);
      common.seed = std::stoull(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
    } catch (const std::exception&) {
      err << "liesym: LIESYM_SEED is not an unsigned integer: '" << env << "'\n";
      return kUsage;
    }
  }

  try {
    if (*exponents) return cmd_exponents(exp_a, exp_r, common, out);
    if (*check) return cmd_check_symmetry(sym_flags, common, out);
    if (*transform) return cmd_transform(tf, common, out);
    if (*grid) return cmd_residual_grid(gf, common, out);
    if (*reg) return cmd_region(region_lambda, region_samples, common, out);
    if (*reduce) return cmd_reduce(reduce_flags, symbolic, common, out);
    if (*weak) return cmd_weak_cs(wcs_flags, wcs_samples, consequences, common, out);
  } catch (const Error& e) {
    err << "liesym: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "liesym: internal error: " << e.what() << "\n";
    return kRefuted;
  }
  return kUsage;
}

}  // namespace liesym::cli
