#include "liesym/normalize.hpp"

#include <algorithm>
#include <optional>
#include <unordered_map>
#include <vector>

#include "liesym/calculus.hpp"

namespace liesym {

namespace {

bool is_polynomial_exponent(const Expr& p) {
  return is_integer_number(p) && p.number().sign() >= 0;
}

Expr positive_power(const Expr& b, const Expr& p) {
  if (is_integer_number(p)) return make_power(b, p);
  if (b.is_product()) {
    auto [c, rest] = split_coefficient(b);
    if (c.sign() <= 0) return make_power(b, p);
    std::vector<Expr> parts{make_power(Expr(c), p)};
    if (rest.is_product()) {
      for (const auto& f : rest.operands()) parts.push_back(positive_power(f, p));
    } else {
      parts.push_back(positive_power(rest, p));
    }
    return make_product(std::move(parts));
  }
  if (b.is_power()) return positive_power(b.base(), make_product({b.exponent(), p}));
  return make_power(b, p);
}

std::vector<Expr> factors_of(const Expr& term) {
  if (term.is_product()) {
    std::vector<Expr> out;
    for (const auto& f : term.operands()) {
      if (!f.is_number()) out.push_back(f);
    }
    return out;
  }
  if (term.is_number()) return {};
  return {term};
}

// Exponent of `base` in `term` when it differs from `reference` by an
// integer; returns that integer offset.
std::optional<Number> integer_offset(const Expr& term, const Expr& base, const Expr& reference) {
  for (const auto& f : factors_of(term)) {
    auto [b, e] = as_base_exponent(f);
    if (b != base) continue;
    Expr d = e - reference;
    if (is_integer_number(d)) return d.number();
    return std::nullopt;
  }
  return std::nullopt;
}

class Normalizer {
 public:
  Expr operator()(const Expr& e) {
    if (e.is_number() || e.is_symbol()) return e;
    if (auto it = memo_.find(e.id()); it != memo_.end()) return it->second;
    Expr out = compute(e);
    memo_.emplace(e.id(), out);
    return out;
  }

 private:
  Expr compute(const Expr& e) {
    switch (e.kind()) {
      case Kind::number:
      case Kind::symbol:
        return e;
      case Kind::log:
        return make_log((*this)(e.argument()));
      case Kind::power:
        return expand(positive_power((*this)(e.base()), (*this)(e.exponent())));
      case Kind::product: {
        std::vector<Expr> fs;
        for (const auto& f : e.operands()) fs.push_back((*this)(f));
        return expand(make_product(std::move(fs)));
      }
      case Kind::sum: {
        std::vector<Expr> ts;
        for (const auto& t : e.operands()) ts.push_back((*this)(t));
        return collect(expand(make_sum(std::move(ts))));
      }
    }
    return e;
  }

  Expr collect(const Expr& e) {
    if (!e.is_sum()) return e;
    std::vector<Expr> remaining = terms_of(e);
    std::vector<Expr> out;
    for (;;) {
      bool found = false;
      for (std::size_t i = 0; i < remaining.size() && !found; ++i) {
        for (const auto& f : factors_of(remaining[i])) {
          auto [base, ref] = as_base_exponent(f);
          if (is_polynomial_exponent(ref)) continue;
          std::vector<std::size_t> group{i};
          Number min_offset(0);
          for (std::size_t j = 0; j < remaining.size(); ++j) {
            if (j == i) continue;
            if (auto d = integer_offset(remaining[j], base, ref)) {
              group.push_back(j);
              if (Number::compare(*d, min_offset) < 0) min_offset = *d;
            }
          }
          if (group.size() < 2) continue;
          Expr lead = ref + Expr(min_offset);
          Expr inverse = make_power(base, -lead);
          std::vector<Expr> cofactors;
          for (auto j : group) cofactors.push_back(make_product({remaining[j], inverse}));
          Expr cof = Normalizer()(make_sum(std::move(cofactors)));
          Expr gathered = make_product({make_power(base, lead), cof});
          std::vector<Expr> rest;
          for (std::size_t j = 0; j < remaining.size(); ++j) {
            if (std::find(group.begin(), group.end(), j) == group.end()) rest.push_back(remaining[j]);
          }
          remaining = std::move(rest);
          if (!gathered.is_zero()) out.push_back(std::move(gathered));
          found = true;
          break;
        }
      }
      if (!found) break;
    }
    for (auto& t : remaining) out.push_back(std::move(t));
    return make_sum(std::move(out));
  }

  std::unordered_map<const void*, Expr> memo_;
};

}  // namespace

Expr simplify(const Expr& e) {
  switch (e.kind()) {
    case Kind::number:
    case Kind::symbol:
      return e;
    case Kind::sum: {
      std::vector<Expr> ts;
      for (const auto& t : e.operands()) ts.push_back(simplify(t));
      return make_sum(std::move(ts));
    }
    case Kind::product: {
      std::vector<Expr> fs;
      for (const auto& f : e.operands()) fs.push_back(simplify(f));
      return make_product(std::move(fs));
    }
    case Kind::power:
      return make_power(simplify(e.base()), simplify(e.exponent()));
    case Kind::log:
      return make_log(simplify(e.argument()));
  }
  return e;
}

Expr normalize(const Expr& e) {
  Expr current = e;
  for (int pass = 0; pass < 8; ++pass) {
    Expr next = Normalizer()(current);
    if (next == current) break;
    current = std::move(next);
  }
  return current;
}

bool is_zero_symbolic(const Expr& e) { return normalize(e).is_zero(); }

bool equal_symbolic(const Expr& a, const Expr& b) { return is_zero_symbolic(a - b); }

}  // namespace liesym
