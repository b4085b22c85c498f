#include "liesym/calculus.hpp"

#include <functional>
#include <unordered_map>
#include <vector>

#include "liesym/errors.hpp"

namespace liesym {

namespace {

using Memo = std::unordered_map<const void*, Expr>;

Expr rebuild(const Expr& e, const std::function<Expr(const Expr&)>& f) {
  switch (e.kind()) {
    case Kind::number:
    case Kind::symbol:
      return e;
    case Kind::sum: {
      std::vector<Expr> ops;
      for (const auto& t : e.operands()) ops.push_back(f(t));
      return make_sum(std::move(ops));
    }
    case Kind::product: {
      std::vector<Expr> ops;
      for (const auto& t : e.operands()) ops.push_back(f(t));
      return make_product(std::move(ops));
    }
    case Kind::power:
      return make_power(f(e.base()), f(e.exponent()));
    case Kind::log:
      return make_log(f(e.argument()));
  }
  return e;
}

class Differentiator {
 public:
  explicit Differentiator(std::string_view wrt) : wrt_(wrt) {}

  Expr operator()(const Expr& e) {
    if (auto it = memo_.find(e.id()); it != memo_.end()) return it->second;
    Expr d = compute(e);
    memo_.emplace(e.id(), d);
    return d;
  }

 private:
  Expr compute(const Expr& e) {
    switch (e.kind()) {
      case Kind::number:
        return Expr(0);
      case Kind::symbol:
        return e.name() == wrt_ ? Expr(1) : Expr(0);
      case Kind::sum: {
        std::vector<Expr> terms;
        for (const auto& t : e.operands()) terms.push_back((*this)(t));
        return make_sum(std::move(terms));
      }
      case Kind::product: {
        auto ops = e.operands();
        std::vector<Expr> terms;
        for (std::size_t i = 0; i < ops.size(); ++i) {
          Expr di = (*this)(ops[i]);
          if (di.is_zero()) continue;
          std::vector<Expr> factors;
          factors.reserve(ops.size());
          for (std::size_t j = 0; j < ops.size(); ++j) {
            if (j != i) factors.push_back(ops[j]);
          }
          factors.push_back(di);
          terms.push_back(make_product(std::move(factors)));
        }
        return make_sum(std::move(terms));
      }
      case Kind::power: {
        const Expr& b = e.base();
        const Expr& p = e.exponent();
        Expr db = (*this)(b);
        if (!depends_on(p, wrt_)) {
          if (db.is_zero()) return Expr(0);
          return make_product({p, make_power(b, p - Expr(1)), db});
        }
        // d(b^p) = b^p (p' log b + p b'/b)
        Expr dp = (*this)(p);
        return make_product({e, make_sum({make_product({dp, make_log(b)}),
                                          make_product({p, db, make_power(b, Expr(-1))})})});
      }
      case Kind::log: {
        Expr da = (*this)(e.argument());
        if (da.is_zero()) return Expr(0);
        return make_product({da, make_power(e.argument(), Expr(-1))});
      }
    }
    return Expr(0);
  }

  std::string wrt_;
  Memo memo_;
};

class Substituter {
 public:
  explicit Substituter(const Bindings& b) : bindings_(b) {}

  Expr operator()(const Expr& e) {
    if (e.is_number()) return e;
    if (auto it = memo_.find(e.id()); it != memo_.end()) return it->second;
    Expr out;
    if (e.is_symbol()) {
      auto it = bindings_.find(e.name());
      out = it == bindings_.end() ? e : it->second;
    } else {
      out = rebuild(e, std::ref(*this));
    }
    memo_.emplace(e.id(), out);
    return out;
  }

 private:
  const Bindings& bindings_;
  Memo memo_;
};

void resolve_binding(const std::string& key, const Bindings& in, Bindings& out,
                     std::vector<std::string>& stack) {
  if (out.count(key)) return;
  for (const auto& s : stack) {
    if (s == key) {
      std::string chain;
      for (const auto& k : stack) chain += k + " -> ";
      throw CyclicBindingError("cyclic binding: " + chain + key);
    }
  }
  stack.push_back(key);
  const Expr& value = in.find(key)->second;
  Bindings inner;
  for (const auto& name : free_symbols(value)) {
    if (in.count(name)) {
      resolve_binding(name, in, out, stack);
      inner.emplace(name, out.at(name));
    }
  }
  stack.pop_back();
  out.emplace(key, inner.empty() ? value : Substituter(inner)(value));
}

bool needs_expansion(const Expr& e) {
  auto is_expandable_factor = [](const Expr& f) {
    if (f.is_sum()) return true;
    if (f.is_power() && f.base().is_sum() && is_integer_number(f.exponent()) &&
        f.exponent().number().sign() > 0)
      return true;
    return false;
  };
  if (e.is_product()) {
    for (const auto& f : e.operands()) {
      if (is_expandable_factor(f)) return true;
    }
    return false;
  }
  return is_expandable_factor(e);
}

class Expander {
 public:
  Expr operator()(const Expr& e) {
    if (e.is_number() || e.is_symbol()) return e;
    if (auto it = memo_.find(e.id()); it != memo_.end()) return it->second;
    Expr out = compute(e);
    memo_.emplace(e.id(), out);
    return out;
  }

 private:
  static constexpr std::int64_t kMaxPower = 64;

  Expr distribute(const std::vector<Expr>& factors) {
    std::vector<Expr> acc{Expr(1)};
    for (const auto& f : factors) {
      std::vector<Expr> next;
      if (f.is_sum()) {
        next.reserve(acc.size() * f.operands().size());
        for (const auto& a : acc) {
          for (const auto& t : f.operands()) next.push_back(make_product({a, t}));
        }
      } else {
        next.reserve(acc.size());
        for (const auto& a : acc) next.push_back(make_product({a, f}));
      }
      acc = std::move(next);
    }
    for (auto& t : acc) {
      if (needs_expansion(t)) t = (*this)(t);
    }
    return make_sum(std::move(acc));
  }

  Expr compute(const Expr& e) {
    switch (e.kind()) {
      case Kind::number:
      case Kind::symbol:
        return e;
      case Kind::log:
        return make_log((*this)(e.argument()));
      case Kind::sum: {
        std::vector<Expr> terms;
        for (const auto& t : e.operands()) terms.push_back((*this)(t));
        return make_sum(std::move(terms));
      }
      case Kind::product: {
        std::vector<Expr> factors;
        for (const auto& f : e.operands()) factors.push_back((*this)(f));
        return distribute(factors);
      }
      case Kind::power: {
        Expr b = (*this)(e.base());
        const Expr& p = e.exponent();
        if (b.is_sum() && is_integer_number(p)) {
          auto n = p.number().as_integer();
          if (n && *n > 0 && *n <= kMaxPower) {
            Expr result = b;
            for (std::int64_t i = 1; i < *n; ++i) result = distribute({result, b});
            return result;
          }
        }
        Expr r = make_power(b, p);
        if (needs_expansion(r) && r != e) return (*this)(r);
        return r;
      }
    }
    return e;
  }

  Memo memo_;
};

void collect_symbols(const Expr& e, std::set<std::string>& out) {
  if (e.is_symbol()) {
    out.insert(e.name());
    return;
  }
  for (const auto& op : e.operands()) collect_symbols(op, out);
}

}  // namespace

Expr diff(const Expr& e, const Expr& wrt) {
  if (!wrt.is_symbol()) throw InvalidParameterError("diff: variable must be a symbol");
  return diff(e, wrt.name());
}

Expr diff(const Expr& e, std::string_view wrt) { return Differentiator(wrt)(e); }

Expr substitute(const Expr& e, const Bindings& bindings, SubstitutionMode mode) {
  if (bindings.empty()) return e;
  if (mode == SubstitutionMode::simultaneous) return Substituter(bindings)(e);
  Bindings closed;
  for (const auto& [key, value] : bindings) {
    std::vector<std::string> stack;
    resolve_binding(key, bindings, closed, stack);
  }
  return Substituter(closed)(e);
}

Expr replace(const Expr& e, const Expr& pattern, const Expr& replacement) {
  std::function<Expr(const Expr&)> go = [&](const Expr& n) -> Expr {
    if (n == pattern) return replacement;
    return rebuild(n, go);
  };
  return go(e);
}

Expr expand(const Expr& e) { return Expander()(e); }

std::set<std::string> free_symbols(const Expr& e) {
  std::set<std::string> out;
  collect_symbols(e, out);
  return out;
}

bool depends_on(const Expr& e, std::string_view name) {
  if (e.is_symbol()) return e.name() == name;
  for (const auto& op : e.operands()) {
    if (depends_on(op, name)) return true;
  }
  return false;
}

std::vector<Expr> terms_of(const Expr& e) {
  if (e.is_sum()) return {e.operands().begin(), e.operands().end()};
  return {e};
}

}  // namespace liesym
