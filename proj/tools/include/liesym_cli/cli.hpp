#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "liesym/orbit.hpp"

namespace liesym::cli {

/// Exit codes.
inline constexpr int kVerified = 0;
inline constexpr int kRefuted = 1;
inline constexpr int kUsage = 2;

/// Runs one command line (args excludes the program name). Reports go to
/// `out` unless --output is given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Header `x,y,in_domain,u,residual`, one row per node in field order,
/// 17 significant digits; masked nodes leave u and residual empty.
void emit_csv(const ResidualField& field, std::ostream& sink);

/// Reads what emit_csv wrote. Throws liesym::ParseError on malformed input.
std::vector<ResidualNode> parse_csv(std::istream& source);

}  // namespace liesym::cli
