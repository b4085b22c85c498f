#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace liesym {

__extension__ using Wide = __int128;

/// Exact rational with 64-bit numerator and denominator, always reduced and
/// with a positive denominator.
class Rational {
 public:
  constexpr Rational() noexcept = default;
  Rational(std::int64_t num, std::int64_t den = 1);

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }

  bool is_integer() const noexcept { return den_ == 1; }
  bool is_zero() const noexcept { return num_ == 0; }
  int sign() const noexcept { return (num_ > 0) - (num_ < 0); }
  double to_double() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }

  /// Reduces n/d; nullopt when the reduced value does not fit in 64 bits.
  static std::optional<Rational> from_wide(Wide n, Wide d);

  /// Exact value of a decimal literal such as "-6.9", "0.25" or "1e-3".
  static std::optional<Rational> from_decimal(std::string_view text);

  std::optional<Rational> checked_add(const Rational& o) const;
  std::optional<Rational> checked_mul(const Rational& o) const;
  std::optional<Rational> checked_div(const Rational& o) const;
  std::optional<Rational> checked_pow(std::int64_t exponent) const;

  Rational operator-() const { return Rational(-num_, den_); }

  std::string to_string() const;

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// A numeric constant: exact rational when possible, IEEE double otherwise.
/// Rational arithmetic that overflows 64 bits degrades to double.
class Number {
 public:
  Number() : value_(Rational{}) {}
  Number(std::int64_t v) : value_(Rational(v)) {}
  Number(int v) : value_(Rational(v)) {}
  Number(Rational r) : value_(r) {}
  explicit Number(double d) : value_(d) {}

  bool is_exact() const noexcept { return std::holds_alternative<Rational>(value_); }
  const Rational& rational() const { return std::get<Rational>(value_); }
  double to_double() const noexcept;

  bool is_zero() const noexcept;
  bool is_one() const noexcept;
  bool is_integer() const noexcept;
  int sign() const noexcept;

  /// Integer value if is_integer() and it fits.
  std::optional<std::int64_t> as_integer() const noexcept;

  Number operator-() const;
  friend Number operator+(const Number& a, const Number& b);
  friend Number operator-(const Number& a, const Number& b) { return a + (-b); }
  friend Number operator*(const Number& a, const Number& b);
  friend Number operator/(const Number& a, const Number& b);

  /// Exact or floating power when the result is a real number that can be
  /// represented; nullopt when it should stay symbolic (irrational root,
  /// negative base under a fractional power, zero to a negative power).
  static std::optional<Number> power(const Number& base, const Number& exponent);

  /// Total order: by value, exact before inexact on ties.
  static int compare(const Number& a, const Number& b) noexcept;

  std::size_t hash() const noexcept;
  std::string to_string() const;

  friend bool operator==(const Number& a, const Number& b) { return compare(a, b) == 0; }

 private:
  std::variant<Rational, double> value_;
};

}  // namespace liesym
