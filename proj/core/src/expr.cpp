#include "liesym/expr.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <utility>

#include "liesym/calculus.hpp"

namespace liesym {

struct Expr::Node {
  Kind kind = Kind::number;
  Number value;
  std::string name;
  std::size_t rank = 0;
  std::vector<Expr> ops;
  std::size_t hash = 0;
};

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ull + (seed << 6) + (seed >> 2));
}

}  // namespace

// Raw node construction; callers guarantee canonical operands.
struct ExprBuilder {
  static Expr number(Number v) {
    auto n = std::make_shared<Expr::Node>();
    n->kind = Kind::number;
    n->hash = mix(1, v.hash());
    n->value = std::move(v);
    return Expr(std::shared_ptr<const Expr::Node>(std::move(n)));
  }

  static Expr symbol(std::string_view name) {
    auto n = std::make_shared<Expr::Node>();
    n->kind = Kind::symbol;
    n->name = std::string(name);
    n->rank = symbol_rank(name);
    n->hash = mix(2, std::hash<std::string_view>{}(name));
    return Expr(std::shared_ptr<const Expr::Node>(std::move(n)));
  }

  static Expr compound(Kind kind, std::vector<Expr> ops) {
    auto n = std::make_shared<Expr::Node>();
    n->kind = kind;
    std::size_t h = static_cast<std::size_t>(kind) * 7919u;
    for (const auto& op : ops) h = mix(h, op.hash());
    n->hash = h;
    n->ops = std::move(ops);
    return Expr(std::shared_ptr<const Expr::Node>(std::move(n)));
  }
};

namespace {

const Expr& zero_expr() {
  static const Expr z = ExprBuilder::number(Number(0));
  return z;
}

const Expr& one_expr() {
  static const Expr o = ExprBuilder::number(Number(1));
  return o;
}

int primary_rank(Kind k) {
  switch (k) {
    case Kind::number: return 0;
    case Kind::symbol: return 1;
    case Kind::log: return 2;
    case Kind::power: return 3;
    case Kind::product: return 4;
    case Kind::sum: return 5;
  }
  return 6;
}

int compare_atoms(const Expr& a, const Expr& b);

// Coefficient and non-numeric factors of a term viewed as a product.
std::pair<Number, std::span<const Expr>> factor_view(const Expr& e) {
  if (e.is_product()) {
    auto ops = e.operands();
    if (!ops.empty() && ops.front().is_number()) return {ops.front().number(), ops.subspan(1)};
    return {Number(1), ops};
  }
  return {Number(1), std::span<const Expr>(&e, 1)};
}

int compare_products(const Expr& a, const Expr& b) {
  auto [ca, fa] = factor_view(a);
  auto [cb, fb] = factor_view(b);
  std::size_t n = std::min(fa.size(), fb.size());
  for (std::size_t i = 0; i < n; ++i) {
    int c = compare_atoms(fa[i], fb[i]);
    if (c != 0) return c;
  }
  if (fa.size() != fb.size()) return fa.size() < fb.size() ? -1 : 1;
  return Number::compare(ca, cb);
}

int compare_primary(const Expr& p, const Expr& q) {
  if (p.id() == q.id()) return 0;
  int rp = primary_rank(p.kind());
  int rq = primary_rank(q.kind());
  if (rp != rq) return rp < rq ? -1 : 1;
  switch (p.kind()) {
    case Kind::number:
      return Number::compare(p.number(), q.number());
    case Kind::symbol: {
      std::size_t ra = symbol_rank(p.name());
      std::size_t rb = symbol_rank(q.name());
      if (ra != rb) return ra < rb ? -1 : 1;
      int c = p.name().compare(q.name());
      return (c > 0) - (c < 0);
    }
    case Kind::log:
      return compare(p.argument(), q.argument());
    case Kind::power: {
      int c = compare(p.base(), q.base());
      if (c != 0) return c;
      return compare(p.exponent(), q.exponent());
    }
    case Kind::product:
      return compare_products(p, q);
    case Kind::sum: {
      auto pa = p.operands();
      auto qa = q.operands();
      std::size_t n = std::min(pa.size(), qa.size());
      for (std::size_t i = 0; i < n; ++i) {
        int c = compare(pa[i], qa[i]);
        if (c != 0) return c;
      }
      if (pa.size() != qa.size()) return pa.size() < qa.size() ? -1 : 1;
      return 0;
    }
  }
  return 0;
}

int compare_atoms(const Expr& a, const Expr& b) {
  if (a.id() == b.id()) return 0;
  const Expr& ba = a.is_power() ? a.base() : a;
  const Expr& bb = b.is_power() ? b.base() : b;
  int c = compare_primary(ba, bb);
  if (c != 0) return c;
  const Expr& ea = a.is_power() ? a.exponent() : one_expr();
  const Expr& eb = b.is_power() ? b.exponent() : one_expr();
  return compare(ea, eb);
}

// Term with coefficient c and coefficient-free remainder rest.
Expr scale_term(const Number& c, const Expr& rest) {
  if (c.is_one()) return rest;
  if (rest.is_one()) return ExprBuilder::number(c);
  std::vector<Expr> ops;
  ops.push_back(ExprBuilder::number(c));
  if (rest.is_product()) {
    for (const auto& f : rest.operands()) ops.push_back(f);
  } else {
    ops.push_back(rest);
  }
  return ExprBuilder::compound(Kind::product, std::move(ops));
}

void flatten_sum(const Expr& e, Number& constant, std::vector<std::pair<Expr, Number>>& terms) {
  if (e.is_sum()) {
    for (const auto& t : e.operands()) flatten_sum(t, constant, terms);
  } else if (e.is_number()) {
    constant = constant + e.number();
  } else {
    auto [c, rest] = split_coefficient(e);
    terms.emplace_back(std::move(rest), std::move(c));
  }
}

void flatten_product(const Expr& e, Number& coeff, std::vector<std::pair<Expr, Expr>>& factors) {
  if (e.is_product()) {
    for (const auto& f : e.operands()) flatten_product(f, coeff, factors);
  } else if (e.is_number()) {
    coeff = coeff * e.number();
  } else {
    factors.push_back(as_base_exponent(e));
  }
}

}  // namespace

std::size_t symbol_rank(std::string_view name) noexcept {
  constexpr std::size_t n = std::size(kReservedSymbols);
  for (std::size_t i = 0; i < n; ++i) {
    if (kReservedSymbols[i] == name) return i;
  }
  return n;
}

bool is_reserved_symbol(std::string_view name) noexcept {
  return symbol_rank(name) < std::size(kReservedSymbols);
}

Expr::Expr() : Expr(zero_expr()) {}
Expr::Expr(int v) : Expr(Number(v)) {}
Expr::Expr(std::int64_t v) : Expr(Number(v)) {}
Expr::Expr(Rational v) : Expr(Number(v)) {}
Expr::Expr(Number v) {
  if (v.is_exact() && v.is_zero()) {
    node_ = zero_expr().node_;
  } else if (v.is_exact() && v.is_one()) {
    node_ = one_expr().node_;
  } else {
    node_ = ExprBuilder::number(std::move(v)).node_;
  }
}

Expr Expr::symbol(std::string_view name) {
  if (name.empty()) throw std::invalid_argument("empty symbol name");
  return ExprBuilder::symbol(name);
}

Kind Expr::kind() const noexcept { return node_->kind; }

bool Expr::is_zero() const noexcept { return is_number() && node_->value.is_zero(); }
bool Expr::is_one() const noexcept { return is_number() && node_->value.is_one(); }

const Number& Expr::number() const {
  if (!is_number()) throw std::logic_error("Expr::number on non-number");
  return node_->value;
}

const std::string& Expr::name() const {
  if (!is_symbol()) throw std::logic_error("Expr::name on non-symbol");
  return node_->name;
}

std::span<const Expr> Expr::operands() const noexcept { return node_->ops; }

const Expr& Expr::base() const {
  if (!is_power()) throw std::logic_error("Expr::base on non-power");
  return node_->ops[0];
}

const Expr& Expr::exponent() const {
  if (!is_power()) throw std::logic_error("Expr::exponent on non-power");
  return node_->ops[1];
}

const Expr& Expr::argument() const {
  if (!is_log()) throw std::logic_error("Expr::argument on non-log");
  return node_->ops[0];
}

std::size_t Expr::hash() const noexcept { return node_->hash; }

bool operator==(const Expr& a, const Expr& b) {
  if (a.id() == b.id()) return true;
  if (a.hash() != b.hash()) return false;
  return compare(a, b) == 0;
}

int compare(const Expr& a, const Expr& b) {
  if (a.id() == b.id()) return 0;
  bool na = a.is_number();
  bool nb = b.is_number();
  if (na && nb) return Number::compare(a.number(), b.number());
  if (na) return -1;
  if (nb) return 1;
  if (a.is_product() || b.is_product()) return compare_products(a, b);
  return compare_atoms(a, b);
}

std::pair<Number, Expr> split_coefficient(const Expr& term) {
  if (term.is_number()) return {term.number(), one_expr()};
  if (term.is_product()) {
    auto ops = term.operands();
    if (ops.front().is_number()) {
      if (ops.size() == 2) return {ops[0].number(), ops[1]};
      return {ops[0].number(),
              ExprBuilder::compound(Kind::product, std::vector<Expr>(ops.begin() + 1, ops.end()))};
    }
  }
  return {Number(1), term};
}

std::pair<Expr, Expr> as_base_exponent(const Expr& e) {
  if (e.is_power()) return {e.base(), e.exponent()};
  return {e, one_expr()};
}

bool is_integer_number(const Expr& e) noexcept { return e.is_number() && e.number().is_integer(); }

Expr make_sum(std::vector<Expr> in) {
  Number constant(0);
  std::vector<std::pair<Expr, Number>> terms;
  terms.reserve(in.size());
  for (const auto& e : in) flatten_sum(e, constant, terms);

  std::sort(terms.begin(), terms.end(),
            [](const auto& l, const auto& r) { return compare(l.first, r.first) < 0; });

  std::vector<Expr> ops;
  if (!constant.is_zero()) ops.push_back(Expr(constant));
  for (std::size_t i = 0; i < terms.size();) {
    Number c = terms[i].second;
    std::size_t j = i + 1;
    while (j < terms.size() && terms[j].first == terms[i].first) {
      c = c + terms[j].second;
      ++j;
    }
    if (!c.is_zero()) ops.push_back(scale_term(c, terms[i].first));
    i = j;
  }
  if (ops.empty()) return zero_expr();
  if (ops.size() == 1) return ops.front();
  return ExprBuilder::compound(Kind::sum, std::move(ops));
}

Expr make_product(std::vector<Expr> in) {
  Number coeff(1);
  std::vector<std::pair<Expr, Expr>> factors;
  factors.reserve(in.size());
  for (const auto& e : in) flatten_product(e, coeff, factors);
  if (coeff.is_zero()) return zero_expr();

  std::stable_sort(factors.begin(), factors.end(),
                   [](const auto& l, const auto& r) { return compare(l.first, r.first) < 0; });

  std::vector<Expr> merged;
  bool again = false;
  for (std::size_t i = 0; i < factors.size();) {
    std::size_t j = i + 1;
    Expr exponent = factors[i].second;
    if (j < factors.size() && factors[j].first == factors[i].first) {
      std::vector<Expr> exps{factors[i].second};
      while (j < factors.size() && factors[j].first == factors[i].first) {
        exps.push_back(factors[j].second);
        ++j;
      }
      exponent = make_sum(std::move(exps));
    }
    Expr f = make_power(factors[i].first, exponent);
    if (f.is_number()) {
      coeff = coeff * f.number();
    } else {
      if (f.is_product() || as_base_exponent(f).first != factors[i].first) again = true;
      merged.push_back(std::move(f));
    }
    i = j;
  }
  if (coeff.is_zero()) return zero_expr();
  if (again) {
    merged.push_back(Expr(coeff));
    return make_product(std::move(merged));
  }
  std::sort(merged.begin(), merged.end(), ExprLess{});
  if (merged.empty()) return Expr(coeff);
  if (merged.size() == 1 && coeff.is_one()) return merged.front();
  std::vector<Expr> ops;
  ops.reserve(merged.size() + 1);
  if (!coeff.is_one()) ops.push_back(Expr(coeff));
  for (auto& f : merged) ops.push_back(std::move(f));
  return ExprBuilder::compound(Kind::product, std::move(ops));
}

Expr make_power(const Expr& base, const Expr& exponent_in) {
  Expr exponent = exponent_in.is_number() || exponent_in.is_symbol() ? exponent_in : expand(exponent_in);
  if (exponent.is_number()) {
    if (exponent.number().is_zero()) return one_expr();
    if (exponent.number().is_one()) return base;
  }
  if (base.is_number()) {
    if (base.number().is_one()) return one_expr();
    if (exponent.is_number()) {
      if (auto r = Number::power(base.number(), exponent.number())) return Expr(*r);
    }
    if (base.number().is_zero() && exponent.is_number() && exponent.number().sign() > 0) return zero_expr();
    return ExprBuilder::compound(Kind::power, {base, exponent});
  }
  if (base.is_power()) {
    // (b^p)^q = b^(p q) for integer q, or when p is not an integer, since
    // b^p then already requires b > 0.
    if (is_integer_number(exponent) || !is_integer_number(base.exponent())) {
      return make_power(base.base(), make_product({base.exponent(), exponent}));
    }
  }
  if (base.is_product() && is_integer_number(exponent)) {
    std::vector<Expr> parts;
    for (const auto& f : base.operands()) parts.push_back(make_power(f, exponent));
    return make_product(std::move(parts));
  }
  return ExprBuilder::compound(Kind::power, {base, exponent});
}

Expr make_log(const Expr& argument) {
  if (argument.is_one()) return zero_expr();
  if (argument.is_number() && !argument.number().is_exact() && argument.number().sign() > 0) {
    return Expr(Number(std::log(argument.number().to_double())));
  }
  return ExprBuilder::compound(Kind::log, {argument});
}

Expr operator+(const Expr& a, const Expr& b) { return make_sum({a, b}); }
Expr operator-(const Expr& a, const Expr& b) { return make_sum({a, make_product({Expr(-1), b})}); }
Expr operator*(const Expr& a, const Expr& b) { return make_product({a, b}); }
Expr operator/(const Expr& a, const Expr& b) { return make_product({a, make_power(b, Expr(-1))}); }
Expr operator-(const Expr& a) { return make_product({Expr(-1), a}); }

}  // namespace liesym
