#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>

#include "liesym/evaluate.hpp"
#include "liesym/expr.hpp"

namespace liesym {

struct Interval {
  double lo = 0.5;
  double hi = 2.0;
};

/// How to draw random environments for numeric identity testing.
struct SampleSpec {
  /// Per-symbol sampling intervals; unlisted free symbols use `fallback`.
  std::map<std::string, Interval, std::less<>> intervals;
  Interval fallback{0.5, 2.0};
  /// Symbols held at fixed values instead of being sampled.
  Env fixed;
  /// Optional acceptance predicate (e.g. membership in a solution domain).
  /// Rejected draws count against the retry budget.
  std::function<bool(const Env&)> accept;
  std::size_t samples = 64;
  /// Pass when |e1 - e2| <= tolerance * (1 + max(|e1|, |e2|)).
  double tolerance = 1e-9;
  std::uint64_t seed = 42;
};

enum class EquivalenceStatus { equivalent, not_equivalent, unsampleable };

struct EquivalenceResult {
  EquivalenceStatus status = EquivalenceStatus::unsampleable;
  /// First failing environment when not_equivalent.
  std::optional<Env> witness;
  std::size_t samples = 0;
  std::size_t rejected = 0;
  /// Largest |e1 - e2| / (1 + max(|e1|, |e2|)) seen.
  double max_scaled_difference = 0.0;

  bool equivalent() const noexcept { return status == EquivalenceStatus::equivalent; }
};

/// Draws one environment binding every symbol in `symbols`.
Env draw_environment(const std::set<std::string>& symbols, const SampleSpec& spec, std::mt19937_64& rng);

/// Randomized identity test. Points where either side leaves its real domain
/// are redrawn, up to 10x the requested sample count in total.
EquivalenceResult equiv_numeric(const Expr& a, const Expr& b, const SampleSpec& spec = {});

}  // namespace liesym
