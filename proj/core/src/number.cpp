#include "liesym/number.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace liesym {

namespace {

Wide gcd128(Wide a, Wide b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    Wide t = a % b;
    a = b;
    b = t;
  }
  return a;
}

constexpr Wide kI64Max = std::numeric_limits<std::int64_t>::max();
constexpr Wide kI64Min = std::numeric_limits<std::int64_t>::min();

bool fits(Wide v) { return v <= kI64Max && v >= kI64Min; }

// Exact integer k-th root of a non-negative value, if one exists.
std::optional<std::int64_t> exact_root(std::int64_t value, std::int64_t k) {
  if (value < 0 || k <= 0) return std::nullopt;
  if (value <= 1) return value;
  auto guess = static_cast<std::int64_t>(std::llround(std::pow(static_cast<double>(value), 1.0 / static_cast<double>(k))));
  for (std::int64_t r = std::max<std::int64_t>(guess - 1, 0); r <= guess + 1; ++r) {
    Wide acc = 1;
    bool overflow = false;
    for (std::int64_t i = 0; i < k; ++i) {
      acc *= r;
      if (acc > kI64Max) {
        overflow = true;
        break;
      }
    }
    if (!overflow && acc == value) return r;
  }
  return std::nullopt;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  auto r = from_wide(num, den);
  if (!r) throw std::overflow_error("rational out of range");
  *this = *r;
}

std::optional<Rational> Rational::from_wide(Wide n, Wide d) {
  if (d == 0) return std::nullopt;
  if (d < 0) {
    n = -n;
    d = -d;
  }
  Wide g = gcd128(n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  if (n == 0) d = 1;
  if (!fits(n) || !fits(d)) return std::nullopt;
  Rational r;
  r.num_ = static_cast<std::int64_t>(n);
  r.den_ = static_cast<std::int64_t>(d);
  return r;
}

std::optional<Rational> Rational::from_decimal(std::string_view text) {
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    negative = text[i] == '-';
    ++i;
  }
  Wide num = 0;
  Wide den = 1;
  constexpr Wide kLimit = static_cast<Wide>(1) << 100;
  bool any_digit = false;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
    num = num * 10 + (text[i] - '0');
    if (num > kLimit) return std::nullopt;
    any_digit = true;
    ++i;
  }
  if (i < text.size() && text[i] == '.') {
    ++i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      num = num * 10 + (text[i] - '0');
      den *= 10;
      if (num > kLimit || den > kLimit) return std::nullopt;
      any_digit = true;
      ++i;
    }
  }
  if (!any_digit) return std::nullopt;
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    bool exp_negative = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
      exp_negative = text[i] == '-';
      ++i;
    }
    int exponent = 0;
    bool exp_digit = false;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      exponent = exponent * 10 + (text[i] - '0');
      if (exponent > 40) return std::nullopt;
      exp_digit = true;
      ++i;
    }
    if (!exp_digit) return std::nullopt;
    for (int k = 0; k < exponent; ++k) {
      if (exp_negative) {
        den *= 10;
      } else {
        num *= 10;
      }
      if (num > kLimit || den > kLimit) return std::nullopt;
    }
  }
  if (i != text.size()) return std::nullopt;
  return from_wide(negative ? -num : num, den);
}

std::optional<Rational> Rational::checked_add(const Rational& o) const {
  return from_wide(static_cast<Wide>(num_) * o.den_ + static_cast<Wide>(o.num_) * den_,
                   static_cast<Wide>(den_) * o.den_);
}

std::optional<Rational> Rational::checked_mul(const Rational& o) const {
  return from_wide(static_cast<Wide>(num_) * o.num_, static_cast<Wide>(den_) * o.den_);
}

std::optional<Rational> Rational::checked_div(const Rational& o) const {
  if (o.num_ == 0) return std::nullopt;
  return from_wide(static_cast<Wide>(num_) * o.den_, static_cast<Wide>(den_) * o.num_);
}

std::optional<Rational> Rational::checked_pow(std::int64_t exponent) const {
  if (exponent < 0) {
    if (num_ == 0) return std::nullopt;
    auto inv = from_wide(den_, num_);
    if (!inv) return std::nullopt;
    if (exponent == std::numeric_limits<std::int64_t>::min()) return std::nullopt;
    return inv->checked_pow(-exponent);
  }
  Rational result(1);
  Rational base = *this;
  while (exponent > 0) {
    if (exponent & 1) {
      auto r = result.checked_mul(base);
      if (!r) return std::nullopt;
      result = *r;
    }
    exponent >>= 1;
    if (exponent > 0) {
      auto b = base.checked_mul(base);
      if (!b) return std::nullopt;
      base = *b;
    }
  }
  return result;
}

std::string Rational::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  Wide lhs = static_cast<Wide>(a.num_) * b.den_;
  Wide rhs = static_cast<Wide>(b.num_) * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

double Number::to_double() const noexcept {
  if (const auto* r = std::get_if<Rational>(&value_)) return r->to_double();
  return std::get<double>(value_);
}

bool Number::is_zero() const noexcept {
  if (const auto* r = std::get_if<Rational>(&value_)) return r->is_zero();
  return std::get<double>(value_) == 0.0;
}

bool Number::is_one() const noexcept {
  if (const auto* r = std::get_if<Rational>(&value_)) return r->num() == 1 && r->den() == 1;
  return std::get<double>(value_) == 1.0;
}

bool Number::is_integer() const noexcept {
  if (const auto* r = std::get_if<Rational>(&value_)) return r->is_integer();
  double d = std::get<double>(value_);
  return std::isfinite(d) && std::floor(d) == d;
}

int Number::sign() const noexcept {
  if (const auto* r = std::get_if<Rational>(&value_)) return r->sign();
  double d = std::get<double>(value_);
  return (d > 0) - (d < 0);
}

std::optional<std::int64_t> Number::as_integer() const noexcept {
  if (!is_integer()) return std::nullopt;
  if (const auto* r = std::get_if<Rational>(&value_)) return r->num();
  double d = std::get<double>(value_);
  if (std::fabs(d) > 9.0e18) return std::nullopt;
  return static_cast<std::int64_t>(d);
}

Number Number::operator-() const {
  if (const auto* r = std::get_if<Rational>(&value_)) {
    if (r->num() != std::numeric_limits<std::int64_t>::min()) return Number(-*r);
    return Number(-r->to_double());
  }
  return Number(-std::get<double>(value_));
}

Number operator+(const Number& a, const Number& b) {
  if (a.is_exact() && b.is_exact()) {
    if (auto r = a.rational().checked_add(b.rational())) return Number(*r);
  }
  return Number(a.to_double() + b.to_double());
}

Number operator*(const Number& a, const Number& b) {
  if (a.is_exact() && b.is_exact()) {
    if (auto r = a.rational().checked_mul(b.rational())) return Number(*r);
  }
  return Number(a.to_double() * b.to_double());
}

Number operator/(const Number& a, const Number& b) {
  if (b.is_zero()) throw std::domain_error("numeric division by zero");
  if (a.is_exact() && b.is_exact()) {
    if (auto r = a.rational().checked_div(b.rational())) return Number(*r);
  }
  return Number(a.to_double() / b.to_double());
}

std::optional<Number> Number::power(const Number& base, const Number& exponent) {
  if (exponent.is_zero()) return Number(1);
  if (base.is_zero()) {
    if (exponent.sign() > 0) return Number(0);
    return std::nullopt;
  }
  if (base.is_exact() && exponent.is_exact()) {
    const Rational& b = base.rational();
    const Rational& e = exponent.rational();
    if (e.is_integer()) {
      if (auto r = b.checked_pow(e.num())) return Number(*r);
      return Number(std::pow(b.to_double(), e.to_double()));
    }
    if (b.sign() < 0) return std::nullopt;
    auto rn = exact_root(b.num(), e.den());
    auto rd = exact_root(b.den(), e.den());
    if (rn && rd) {
      if (auto r = Rational(*rn, *rd).checked_pow(e.num())) return Number(*r);
    }
    return std::nullopt;
  }
  double b = base.to_double();
  double e = exponent.to_double();
  if (b < 0 && !exponent.is_integer()) return std::nullopt;
  return Number(std::pow(b, e));
}

int Number::compare(const Number& a, const Number& b) noexcept {
  if (a.is_exact() && b.is_exact()) {
    auto c = a.rational() <=> b.rational();
    return c < 0 ? -1 : (c > 0 ? 1 : 0);
  }
  double x = a.to_double();
  double y = b.to_double();
  if (x < y) return -1;
  if (x > y) return 1;
  if (a.is_exact() != b.is_exact()) return a.is_exact() ? -1 : 1;
  return 0;
}

std::size_t Number::hash() const noexcept {
  if (const auto* r = std::get_if<Rational>(&value_)) {
    return std::hash<std::int64_t>{}(r->num()) * 1000003u ^ std::hash<std::int64_t>{}(r->den());
  }
  return std::hash<double>{}(std::get<double>(value_)) ^ 0x9e3779b97f4a7c15ull;
}

std::string Number::to_string() const {
  if (const auto* r = std::get_if<Rational>(&value_)) return r->to_string();
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", std::get<double>(value_));
  std::string s(buf);
  // Keep a marker so the literal still reads as a real number.
  if (s.find_first_of(".eEin") == std::string::npos) s += ".0";
  return s;
}

}  // namespace liesym
