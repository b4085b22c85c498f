#pragma once

#include <map>
#include <string>

#include "liesym/expr.hpp"

namespace liesym {

using Env = std::map<std::string, double, std::less<>>;

/// Real value of `e` under `env`.
///
/// Powers with a non-integral exponent value need a strictly positive base;
/// zero to a negative power and log of a non-positive value are domain
/// errors too. Throws UnboundSymbolError or DomainError.
double eval_at(const Expr& e, const Env& env);

}  // namespace liesym
