#pragma once

#include "liesym/expr.hpp"

namespace liesym {

/// Canonical rebuild. Idempotent; never distributes products over sums.
Expr simplify(const Expr& e);

/// Normal form for identity testing under the assumption that every power
/// base is positive:
///   - products are expanded,
///   - (a b)^q = a^q b^q and (b^p)^q = b^(p q) for any q,
///   - in a sum, terms sharing a base B with exponents that differ by
///     integers are gathered as B^e * (cofactor), and the cofactor is
///     normalized (so cancellations inside it are exposed).
/// Two expressions that normalize to the same tree are equal wherever both
/// are defined with positive bases. The converse does not hold in general.
Expr normalize(const Expr& e);

/// normalize(e) is the number 0.
bool is_zero_symbolic(const Expr& e);

/// normalize(a - b) is the number 0.
bool equal_symbolic(const Expr& a, const Expr& b);

}  // namespace liesym
