#pragma once

#include <set>
#include <string>
#include <string_view>

#include "liesym/expr.hpp"

namespace liesym {

struct ParseOptions {
  /// Reject identifiers that are neither reserved nor listed in `declared`.
  bool strict = false;
  std::set<std::string, std::less<>> declared;
};

/// Parses the infix grammar
///
///   expr     := term (('+'|'-') term)*
///   term     := factor (('*'|'/') factor)*
///   factor   := base ('^' exponent)?
///   base     := number | symbol | 'log' '(' expr ')' | '(' expr ')' | '-' factor
///   exponent := ['+'|'-'] number | symbol | '(' expr ')'
///
/// into a canonical expression. Decimal literals are read as exact rationals.
Expr parse(std::string_view text, const ParseOptions& options = {});

}  // namespace liesym
