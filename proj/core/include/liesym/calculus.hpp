#pragma once

#include <map>
#include <set>
#include <string>

#include "liesym/expr.hpp"

namespace liesym {

/// Partial derivative with every other symbol held constant.
Expr diff(const Expr& e, const Expr& wrt);
Expr diff(const Expr& e, std::string_view wrt);

using Bindings = std::map<std::string, Expr, std::less<>>;

enum class SubstitutionMode {
  /// Every bound symbol is replaced once, in parallel; replacements are not
  /// revisited, so {x -> y, y -> x} swaps.
  simultaneous,
  /// Bindings are first closed under composition (x -> y, y -> z gives
  /// x -> z); a binding chain that returns to its own symbol is an error.
  transitive,
};

/// Substitutes symbols by expressions and re-canonicalizes.
/// Throws CyclicBindingError in transitive mode when the bindings loop.
Expr substitute(const Expr& e, const Bindings& bindings,
                SubstitutionMode mode = SubstitutionMode::simultaneous);

/// Replaces every occurrence of a sub-expression (matched structurally).
Expr replace(const Expr& e, const Expr& pattern, const Expr& replacement);

/// Distributes products over sums and multiplies out positive integer powers
/// of sums, recursively. Negative and symbolic powers of sums are kept.
Expr expand(const Expr& e);

std::set<std::string> free_symbols(const Expr& e);
bool depends_on(const Expr& e, std::string_view name);

/// Top-level additive terms (a single term for non-sums).
std::vector<Expr> terms_of(const Expr& e);

}  // namespace liesym
