#pragma once

#include <cstddef>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "liesym/number.hpp"

namespace liesym {

enum class Kind : unsigned char { number, symbol, sum, product, power, log };

/// Reserved symbol alphabet, in canonical order. Any other identifier is a
/// user symbol and sorts after these, lexicographically.
inline constexpr std::string_view kReservedSymbols[] = {
    "x",  "y",  "u", "ux", "uy", "uxx", "uxy", "uyy", "s",  "v",
    "vs", "vss", "a", "r",  "c1", "c2",  "g1",  "g2",  "lam"};

/// Position in the reserved alphabet, or the alphabet size for user symbols.
std::size_t symbol_rank(std::string_view name) noexcept;
bool is_reserved_symbol(std::string_view name) noexcept;

/// Immutable, canonical expression tree with shared structure.
///
/// Every factory returns a canonical form: Sum and Product operands are
/// flattened and sorted by compare(), numeric parts are merged into a single
/// leading constant, like terms and like bases are combined, and exponents are
/// kept expanded. Products are never distributed over sums here; see expand().
class Expr {
 public:
  Expr();  // the constant 0
  Expr(int v);
  Expr(std::int64_t v);
  Expr(Rational v);
  Expr(Number v);

  static Expr symbol(std::string_view name);

  Kind kind() const noexcept;
  bool is_number() const noexcept { return kind() == Kind::number; }
  bool is_symbol() const noexcept { return kind() == Kind::symbol; }
  bool is_sum() const noexcept { return kind() == Kind::sum; }
  bool is_product() const noexcept { return kind() == Kind::product; }
  bool is_power() const noexcept { return kind() == Kind::power; }
  bool is_log() const noexcept { return kind() == Kind::log; }

  bool is_zero() const noexcept;
  bool is_one() const noexcept;

  /// Value of a number node.
  const Number& number() const;
  /// Name of a symbol node.
  const std::string& name() const;
  /// Operands of a sum, product, power (base, exponent) or log (argument).
  std::span<const Expr> operands() const noexcept;

  const Expr& base() const;      // power only
  const Expr& exponent() const;  // power only
  const Expr& argument() const;  // log only

  std::size_t hash() const noexcept;
  /// Node identity; equal pointers imply structural equality.
  const void* id() const noexcept { return node_.get(); }

  friend bool operator==(const Expr& a, const Expr& b);

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  friend Expr make_sum(std::vector<Expr> terms);
  friend Expr make_product(std::vector<Expr> factors);
  friend Expr make_power(const Expr& base, const Expr& exponent);
  friend Expr make_log(const Expr& argument);
  friend struct ExprBuilder;

  std::shared_ptr<const Node> node_;
};

/// Fixed total order used for canonical operand ordering: numbers first, then
/// the remaining terms compared by (base, exponent) factor lists.
int compare(const Expr& a, const Expr& b);

struct ExprLess {
  bool operator()(const Expr& a, const Expr& b) const { return compare(a, b) < 0; }
};

struct ExprHash {
  std::size_t operator()(const Expr& e) const noexcept { return e.hash(); }
};

Expr make_sum(std::vector<Expr> terms);
Expr make_product(std::vector<Expr> factors);
Expr make_power(const Expr& base, const Expr& exponent);
Expr make_log(const Expr& argument);

inline Expr pow(const Expr& base, const Expr& exponent) { return make_power(base, exponent); }
inline Expr log(const Expr& argument) { return make_log(argument); }

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);

/// Splits a term into its numeric coefficient and the remaining factor
/// (1 for a pure number).
std::pair<Number, Expr> split_coefficient(const Expr& term);

/// View of an atom or power as (base, exponent); non-powers have exponent 1.
std::pair<Expr, Expr> as_base_exponent(const Expr& e);

/// True for number nodes holding an integer value.
bool is_integer_number(const Expr& e) noexcept;

std::string to_string(const Expr& e);
std::ostream& operator<<(std::ostream& os, const Expr& e);

/// Convenience: the symbol with this name.
inline Expr sym(std::string_view name) { return Expr::symbol(name); }

}  // namespace liesym
