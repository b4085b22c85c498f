#include "liesym/parser.hpp"

#include <cctype>
#include <cstdlib>
#include <string>

#include "liesym/errors.hpp"

namespace liesym {

namespace {

class Parser {
 public:
  Parser(std::string_view text, const ParseOptions& options) : text_(text), options_(options) {}

  Expr parse_all() {
    Expr e = parse_expr();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
    return e;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) {
      if (pos_ >= text_.size()) throw ParseError(std::string("expected '") + c + "' before end of input", pos_);
      throw ParseError(std::string("expected '") + c + "'", pos_);
    }
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  Expr parse_expr() {
    std::vector<Expr> terms{parse_term()};
    for (;;) {
      if (accept('+')) {
        terms.push_back(parse_term());
      } else if (accept('-')) {
        terms.push_back(-parse_term());
      } else {
        break;
      }
    }
    return make_sum(std::move(terms));
  }

  Expr parse_term() {
    std::vector<Expr> factors{parse_factor()};
    for (;;) {
      if (accept('*')) {
        factors.push_back(parse_factor());
      } else if (accept('/')) {
        factors.push_back(make_power(parse_factor(), Expr(-1)));
      } else {
        break;
      }
    }
    return make_product(std::move(factors));
  }

  Expr parse_factor() {
    Expr b = parse_base();
    if (accept('^')) return make_power(b, parse_exponent());
    return b;
  }

  Expr parse_base() {
    char c = peek();
    if (c == '\0') throw ParseError("unexpected end of input", pos_);
    if (c == '-') {
      ++pos_;
      return -parse_factor();
    }
    if (c == '(') {
      ++pos_;
      Expr e = parse_expr();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c))) return parse_identifier();
    throw ParseError(std::string("unexpected '") + c + "'", pos_);
  }

  Expr parse_exponent() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      Expr e = parse_expr();
      expect(')');
      return e;
    }
    if (c == '-' || c == '+') {
      ++pos_;
      skip_ws();
      Expr n = parse_number();
      return c == '-' ? -n : n;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c))) return parse_identifier();
    if (c == '\0') throw ParseError("missing exponent", pos_);
    throw ParseError("exponent must be a number, a symbol or parenthesized", pos_);
  }

  Expr parse_number() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t save = pos_;
      ++pos_;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      } else {
        pos_ = save;
      }
    }
    std::string_view lit = text_.substr(start, pos_ - start);
    if (lit.empty() || lit == ".") throw ParseError("malformed number", start);
    if (auto r = Rational::from_decimal(lit)) return Expr(*r);
    std::string buf(lit);
    return Expr(Number(std::strtod(buf.c_str(), nullptr)));
  }

  Expr parse_identifier() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    std::string_view name = text_.substr(start, pos_ - start);
    if (name == "log" && peek() == '(') {
      ++pos_;
      Expr arg = parse_expr();
      expect(')');
      return make_log(arg);
    }
    if (options_.strict && !is_reserved_symbol(name) && !options_.declared.count(name)) {
      throw UnknownSymbolError(std::string(name), start);
    }
    return Expr::symbol(name);
  }

  std::string_view text_;
  const ParseOptions& options_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse(std::string_view text, const ParseOptions& options) {
  return Parser(text, options).parse_all();
}

}  // namespace liesym
