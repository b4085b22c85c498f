#include <ostream>
#include <string>

#include "liesym/expr.hpp"

namespace liesym {

namespace {

std::string print_sum_level(const Expr& e);

bool is_negative_term(const Expr& t) {
  if (t.is_number()) return t.number().sign() < 0;
  if (t.is_product() && t.operands().front().is_number()) return t.operands().front().number().sign() < 0;
  return false;
}

bool is_plain_integer(const Expr& e) {
  return e.is_number() && e.number().is_exact() && e.number().is_integer() && e.number().sign() >= 0;
}

std::string print_base(const Expr& b) {
  if (b.is_symbol()) return b.name();
  if (is_plain_integer(b)) return b.number().to_string();
  return "(" + print_sum_level(b) + ")";
}

std::string print_exponent(const Expr& p) {
  if (is_plain_integer(p)) return p.number().to_string();
  if (p.is_symbol()) return p.name();
  return "(" + print_sum_level(p) + ")";
}

std::string print_factor(const Expr& e) {
  switch (e.kind()) {
    case Kind::symbol:
      return e.name();
    case Kind::number:
      if (is_plain_integer(e)) return e.number().to_string();
      return "(" + e.number().to_string() + ")";
    case Kind::power:
      return print_base(e.base()) + "^" + print_exponent(e.exponent());
    case Kind::log:
      return "log(" + print_sum_level(e.argument()) + ")";
    case Kind::sum:
    case Kind::product:
      return "(" + print_sum_level(e) + ")";
  }
  return {};
}

std::string print_term(const Expr& e) {
  if (e.is_number()) return e.number().to_string();
  if (!e.is_product()) return print_factor(e);
  auto ops = e.operands();
  std::size_t first = 0;
  std::string out;
  if (ops.front().is_number()) {
    const Number& c = ops.front().number();
    first = 1;
    if (c == Number(-1)) {
      out = "-";
    } else {
      out = c.to_string() + "*";
    }
  }
  for (std::size_t i = first; i < ops.size(); ++i) {
    if (i > first) out += "*";
    out += print_factor(ops[i]);
  }
  return out;
}

std::string print_sum_level(const Expr& e) {
  if (!e.is_sum()) return print_term(e);
  auto ops = e.operands();
  std::string out = print_term(ops.front());
  for (std::size_t i = 1; i < ops.size(); ++i) {
    if (is_negative_term(ops[i])) {
      out += " - " + print_term(-ops[i]);
    } else {
      out += " + " + print_term(ops[i]);
    }
  }
  return out;
}

}  // namespace

std::string to_string(const Expr& e) { return print_sum_level(e); }

std::ostream& operator<<(std::ostream& os, const Expr& e) { return os << to_string(e); }

}  // namespace liesym
